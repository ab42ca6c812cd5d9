#pragma once

#include "holoshear/ralgebra.hpp"

#include <array>
#include <variant>
#include <vector>

namespace holoshear {

// 2x2 matrix with entries in R_Lambda, row-major (a b; c d).
struct Mat2 {
    RNum a, b, c, d;
    Lambda lambda = Lambda::Zero;

    Mat2() = default;
    Mat2(RNum a_, RNum b_, RNum c_, RNum d_);

    static Mat2 identity(Lambda l);
    // real 2x2 embedded at the given lambda
    static Mat2 from_real(double a, double b, double c, double d, Lambda l);
};

Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 operator+(const Mat2& m, const Mat2& n);
Mat2 operator-(const Mat2& m, const Mat2& n);
Mat2 operator*(const RNum& s, const Mat2& m);
Mat2 operator*(double s, const Mat2& m);

RNum det(const Mat2& m);
RNum trace(const Mat2& m);
Mat2 inverse_unit_det(const Mat2& m);     // adjugate; requires det = 1 (up to tol)
Mat2 inverse(const Mat2& m);              // general, requires invertible det
Mat2 traceless_part(const Mat2& m);

double frobenius_max(const Mat2& m);                       // max entrywise abs
double distance(const Mat2& m, const Mat2& n);             // entrywise max distance
// projective comparison: min(|m-n|, |m+n|) <= tol
bool approx_equal_up_to_sign(const Mat2& m, const Mat2& n, double tol);

// Holonomy generators.
Mat2 gen_E(const RNum& z);                 // diag(e^{z/2}, e^{-z/2})
Mat2 gen_E(double x, Lambda l);
Mat2 gen_L(Lambda l);                      // (1 1; 0 1)
Mat2 gen_R(Lambda l);                      // (1 0; 1 1)

// ---------------------------------------------------------------------------
// Lie algebra: traceless 2x2 matrices over R_Lambda in the basis
//   J0 = (0 -1; 1 0)/2, J1 = (1 0; 0 -1)/2, J2 = (0 1; 1 0)/2,
// with kappa(Ji, Jj) = eta_ij / 2, eta = diag(-1, 1, 1). P_i = ell * J_i.
// ---------------------------------------------------------------------------

struct LieVec {
    RNum v0, v1, v2;
    Lambda lambda = Lambda::Zero;

    LieVec() = default;
    LieVec(RNum a, RNum b, RNum c);

    static LieVec basis_J(int i, Lambda l);
    static LieVec basis_P(int i, Lambda l);
};

LieVec operator+(const LieVec& x, const LieVec& y);
LieVec operator-(const LieVec& x, const LieVec& y);
LieVec operator*(const RNum& s, const LieVec& x);

Mat2 to_matrix(const LieVec& x);
LieVec from_matrix(const Mat2& m);        // requires traceless

// Killing pairing kappa(X,Y) = Tr(XY) and the induced real bilinear forms.
RNum kappa(const LieVec& x, const LieVec& y);
double re_form(const LieVec& x, const LieVec& y);   // ( , )  = 2 Re kappa
double im_form(const LieVec& x, const LieVec& y);   // < , > = 2 Im kappa

// Non-degeneracy of mu*( , ) + nu*< , >.
bool form_combination_nondegenerate(double mu, double nu, Lambda l);

LieVec ad_action(const Mat2& g, const LieVec& x);   // Ad_g X = g X g^{-1}

// ---------------------------------------------------------------------------
// Decomposition of unit-determinant matrices into the per-curvature model:
//   lambda = -1 : pair of real matrices (idempotent components)
//   lambda =  0 : (real matrix, translation part Y X^{-1} as a real LieVec)
//   lambda = +1 : complex matrix (returned unchanged)
// The decomposition is a group homomorphism into the respective structure.
// ---------------------------------------------------------------------------

struct RealMat2 {
    double a = 0, b = 0, c = 0, d = 0;
};

struct DecomposedPair {            // lambda = -1
    RealMat2 plus, minus;
};
struct DecomposedSemidirect {      // lambda = 0
    RealMat2 base;
    std::array<double, 3> translation;   // J-basis coefficients
};
struct DecomposedComplex {         // lambda = +1
    Mat2 m;
};

using Decomposed = std::variant<DecomposedPair, DecomposedSemidirect, DecomposedComplex>;

Decomposed decompose(const Mat2& m, double det_tol = 1e-9);
Decomposed decompose_mul(const Decomposed& u, const Decomposed& v);
double decomposed_distance(const Decomposed& u, const Decomposed& v);

// Geodesic length from a holonomy trace: l = 2 arccosh(|Re tr|/2).
double geodesic_length(const RNum& tr);

} // namespace holoshear
