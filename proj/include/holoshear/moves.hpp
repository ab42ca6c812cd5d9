#pragma once

#include "holoshear/coords.hpp"
#include "holoshear/fatgraph.hpp"
#include "holoshear/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace holoshear {

struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MovedShear {
    FatGraph graph;
    ShearVector x;
    MoveRecord record;
};

struct MovedLam {
    FatGraph graph;
    ShearVector x;
    LamVector w;
    MoveRecord record;
};

struct MovedGen {
    FatGraph graph;
    GenShearVector z;
    MoveRecord record;
};

struct MovedCot {
    FatGraph graph;
    CotangentVector cv;
    MoveRecord record;
};

// Whitehead moves in the four coordinate systems. Edge labels are stable and
// edge indices are preserved, so coordinate vectors stay index-aligned across
// moves. Increments accumulate slot-wise when neighbor edges coincide.
MovedShear move_x(const FatGraph& g, const ShearVector& x, int edge);
MovedLam move_lam(const FatGraph& g, const ShearVector& x, const LamVector& w, int edge);
MovedGen move_z(const FatGraph& g, const GenShearVector& z, int edge);
// The cotangent action depends on the curvature through Im log.
MovedCot move_cotangent(const FatGraph& g, const CotangentVector& cv, int edge, Lambda l);

double hamiltonian_H(double x);                 // x^2/4 + Li2(-e^x)
double hamiltonian_H_deriv(double x);           // x/2 - log(1 + e^x)
double im_H_lambda(const RNum& z);              // Im part of the extended Hamiltonian

// ---------------------------------------------------------------------------
// Decomposition of a move into a linear combinatorial part A and a
// Hamiltonian displacement B with W = A after B. The A part is independent of
// the coordinates and pushes the bivector of the pre-move graph to the
// post-move one.
// ---------------------------------------------------------------------------

ShearVector apply_A_x(const FatGraph& g, const ShearVector& x, int edge);
ShearVector apply_B_x(const FatGraph& g, const ShearVector& x, int edge);
GenShearVector apply_A_z(const FatGraph& g, const GenShearVector& z, int edge);
GenShearVector apply_B_z(const FatGraph& g, const GenShearVector& z, int edge);
CotangentVector apply_A_cot(const FatGraph& g, const CotangentVector& cv, int edge);
CotangentVector apply_B_cot(const FatGraph& g, const CotangentVector& cv, int edge, Lambda l);

DMat a_jacobian_x(const FatGraph& g, int edge);      // E x E, half-integer entries
DMat a_jacobian_cot(const FatGraph& g, int edge);    // 2E x 2E

// (A)_* pi_WP = pi'_WP and (A~)_* pi_T* = pi'_T*, exact.
bool a_pushforward_wp_exact(const FatGraph& g, int edge);
bool a_pushforward_cot_exact(const FatGraph& g, int edge);

// ---------------------------------------------------------------------------
// Relation suite: involutivity, naturality, commutativity, pentagon.
// ---------------------------------------------------------------------------

struct RelationReport {
    double involutivity = 0;
    double naturality = 0;
    double commutativity = -1;   // -1 when not testable on this graph
    double pentagon = -1;
    int samples = 0;
    std::vector<std::string> notes;

    double worst() const;
};

RelationReport relation_suite(const FatGraph& g, Space space, Lambda lambda, int samples,
                              std::uint64_t seed);

// non-loop edge pairs used by the suite
std::vector<std::pair<int, int>> disjoint_edge_pairs(const FatGraph& g);
std::vector<std::pair<int, int>> pentagon_edge_pairs(const FatGraph& g);
std::vector<int> flippable_edges(const FatGraph& g);

// thread cap honoring HOLOSHEAR_THREADS
int worker_count();
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace holoshear
