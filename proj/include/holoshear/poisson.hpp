#pragma once

#include "holoshear/coords.hpp"
#include "holoshear/fatgraph.hpp"
#include "holoshear/holonomy.hpp"
#include "holoshear/linalg.hpp"

#include <functional>
#include <vector>

namespace holoshear {

enum class BivectorKind { WeilPetersson, Gravitational, CotangentBundle };

// Constant-coefficient bivectors. WeilPetersson acts on the E shear
// directions; Gravitational on (x, y) with {x^a, y^b} = pi^{ab}/2;
// CotangentBundle on (x, p) with {x^a, p_b} = delta^a_b.
struct Bivector {
    BivectorKind kind = BivectorKind::WeilPetersson;
    int edges = 0;
    std::vector<std::vector<int>> wp;   // E x E antisymmetric coefficients
};

std::vector<std::vector<int>> wp_coefficients(const FatGraph& g);
Bivector make_bivector(const FatGraph& g, BivectorKind kind);

// Coefficient matrix C_uv = {u, v} over the flattened coordinates.
DMat coefficient_matrix(const Bivector& b);

// theta . pi = 0, exact in integers.
bool constraints_casimir_exact(const FatGraph& g);
// rank of pi restricted = E - F
int wp_rank(const FatGraph& g);

using ScalarFn = std::function<double(const std::vector<double>&)>;

// Central differences with a Richardson fallback when the two-step estimates
// disagree; exponentially scaled trace functions need this at larger inputs.
double numeric_partial(const ScalarFn& f, std::vector<double> at, std::size_t i,
                       double step = 1e-6);
std::vector<double> numeric_gradient(const ScalarFn& f, const std::vector<double>& at,
                                     double step = 1e-6);

double bracket(const ScalarFn& f, const ScalarFn& g, const DMat& coeff,
               const std::vector<double>& at, double step = 1e-6);

// (x, p) -> (x, y = pi p).
GenShearVector pi_sharp(const CotangentVector& cv, const FatGraph& g, Lambda l);
// exact integer check of J pi_T* J^T = -2 pi_Lambda for the pi_sharp Jacobian
bool pi_sharp_pushforward_identity(const FatGraph& g);
// pi annihilates the constraint differentials: pi . theta^T = 0 (exact)
bool pi_sharp_kills_constraint_differentials(const FatGraph& g);

// Dirac bracket on (x, p) for the gauge-fixed constraint pair (c, c~).
// Either from numeric gradients of the two functions or, when closed-form
// gradients are available, directly from them.
double dirac_bracket(const ScalarFn& f, const ScalarFn& g, const ConstraintMap& cm,
                     const std::vector<double>& at, double step = 1e-6);
double dirac_bracket_from_gradients(const std::vector<double>& gf,
                                    const std::vector<double>& gg,
                                    const ConstraintMap& cm);
// pairing of the stacked constraints; [[0, -M^T], [M, 0]] in the default gauge
DMat dirac_constraint_matrix(const ConstraintMap& cm);

// ---------------------------------------------------------------------------
// Trace functions and the Goldman bracket.
// ---------------------------------------------------------------------------

// F_a solved from Im kappa(F_a, basis) = d/dt f(rho(a) e^{t basis}) over the six
// real basis directions J_i, P_i, for f = Im trace.
LieVec trace_gradient_lie(const Mat2& rho);

struct GoldmanSegment {
    bool reversed = false;   // matched against the reversed second path
    int length = 0;          // shared directed edges
    double eps = 0;          // oriented intersection number from corner turns
    double contribution = 0;
};

struct GoldmanReport {
    double numeric = 0;        // gradient contraction with the gravitational bivector
    double lie = 0;            // segment sum over based Lie-algebra pairings
    std::vector<GoldmanSegment> segments;
    double discrepancy() const { return std::abs(numeric - lie); }
};

GoldmanReport goldman_bracket_traces(const FatGraph& g, const EdgePath& a,
                                     const EdgePath& b, const GenShearVector& z,
                                     double step = 1e-6);

// Flows of Re/Im trace: closed form (1/2) sum_k pi^{a_k b} Tr((ell) J_k rho)
// against the numeric bracket, plus the finite-difference derivative identity
// d(rho)/dy^{a_k} = ell J_k rho.
struct FlowCheckReport {
    double max_bracket_err = 0;     // closed form vs numeric bracket
    double max_derivative_err = 0;  // finite-difference matrix identity
};

FlowCheckReport hamiltonian_flow_check(const FatGraph& g, const EdgePath& a,
                                       const GenShearVector& z, bool re_part,
                                       double step = 1e-6);

// flattening helpers for (x, y) and (x, p) spaces
std::vector<double> flatten(const GenShearVector& z);
GenShearVector unflatten_gen(const std::vector<double>& v, Lambda l, std::uint64_t fp);
std::vector<double> flatten(const CotangentVector& cv);
CotangentVector unflatten_cot(const std::vector<double>& v, std::uint64_t fp);

} // namespace holoshear
