#pragma once

#include "holoshear/fatgraph.hpp"
#include "holoshear/linalg.hpp"
#include "holoshear/ralgebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace holoshear {

struct CoordsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Space { Teich, Lamination, Spacetime, Cotangent };

Space space_from_string(const std::string& s);
const char* space_name(Space s);

// Per-edge real shear values x^alpha.
struct ShearVector {
    std::vector<double> x;
    std::uint64_t graph_fp = 0;
};

// Per-edge R_Lambda lamination values w^alpha = u + ell v.
struct LamVector {
    std::vector<RNum> w;
    Lambda lambda = Lambda::Zero;
    std::uint64_t graph_fp = 0;
};

// Per-edge R_Lambda shear-bending values z^alpha = x + ell y.
struct GenShearVector {
    std::vector<RNum> z;
    Lambda lambda = Lambda::Zero;
    std::uint64_t graph_fp = 0;

    std::vector<double> re() const;
    std::vector<double> im() const;
};

// Per-edge pairs (x^alpha, p_alpha) on the cotangent bundle.
struct CotangentVector {
    std::vector<double> x, p;
    std::uint64_t graph_fp = 0;
};

GenShearVector embed_real(const ShearVector& xs, Lambda l);
GenShearVector combine(const ShearVector& xs, const LamVector& w);   // z = x + w
GenShearVector make_gen(std::vector<double> x, std::vector<double> y, Lambda l,
                        std::uint64_t fp);

// Face constraint matrix theta (F x E) with an optional gauge matrix.
class ConstraintMap {
public:
    explicit ConstraintMap(const FatGraph& g);

    int edges() const { return E_; }
    int faces() const { return F_; }
    std::uint64_t graph_fp() const { return fp_; }

    const std::vector<std::vector<int>>& theta() const { return theta_; }
    // gauge rows theta~_i^alpha; defaults to the rows of theta
    const std::vector<std::vector<int>>& theta_tilde() const { return tilde_; }
    void set_gauge(std::vector<std::vector<int>> tilde);

    std::vector<double> residual(const ShearVector& v) const;
    std::vector<RNum> residual(const GenShearVector& v) const;
    std::vector<RNum> residual(const LamVector& v) const;
    // c(x) and c~(p) stacked
    std::vector<double> residual(const CotangentVector& v) const;

    double max_residual(const ShearVector& v) const;
    double max_residual(const GenShearVector& v) const;
    double max_residual(const LamVector& v) const;

    // Dirac pairing M_i^j = sum_alpha theta~_i^alpha theta^j_alpha.
    std::vector<std::vector<int>> dirac_matrix() const;
    bool gauge_admissible() const;

    // theta has full row rank on dual graphs of triangulations; verified here.
    bool full_row_rank() const;
    int kernel_dimension() const;   // E - F when full rank

    // Gaussian sample projected orthogonally onto Ker theta (and, for the
    // cotangent fiber, onto Ker theta~).
    ShearVector sample_teich(std::uint64_t seed, double scale = 1.0) const;
    LamVector sample_lamination(std::uint64_t seed, Lambda l, double scale_u = 1.0,
                                double scale_v = 1.0) const;
    GenShearVector sample_spacetime(std::uint64_t seed, Lambda l, double scale_x = 1.0,
                                    double scale_y = 1.0) const;
    CotangentVector sample_cotangent(std::uint64_t seed, double scale_x = 1.0,
                                     double scale_p = 1.0) const;
    // plain box sample (no constraint), used where identities hold pointwise
    GenShearVector sample_box(std::uint64_t seed, Lambda l, double scale_x,
                              double scale_y) const;
    CotangentVector sample_cotangent_box(std::uint64_t seed, double scale_x,
                                         double scale_p) const;

    std::vector<double> project_to_kernel(const std::vector<double>& v) const;

private:
    int E_ = 0, F_ = 0;
    std::uint64_t fp_ = 0;
    std::vector<std::vector<int>> theta_, tilde_;
    DMat projector_;   // I - theta^T (theta theta^T)^{-1} theta

    void build_projector();
};

void require_same_graph(std::uint64_t a, std::uint64_t b, const char* where);

// Coordinate file I/O:
// {"lambda": -1|0|1, "space": "teich"|"lamination"|"spacetime"|"cotangent",
//  "values": {label: x | [re, im] | [x, p]}}
std::string to_json(const ShearVector& v, const FatGraph& g);
std::string to_json(const LamVector& v, const FatGraph& g);
std::string to_json(const GenShearVector& v, const FatGraph& g);
std::string to_json(const CotangentVector& v, const FatGraph& g);

struct ParsedCoords {
    Space space;
    Lambda lambda;
    ShearVector shear;
    LamVector lam;
    GenShearVector gen;
    CotangentVector cot;
};

ParsedCoords coords_from_json(const std::string& text, const FatGraph& g);

} // namespace holoshear
