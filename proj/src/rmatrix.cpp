#include "holoshear/rmatrix.hpp"

#include <cmath>

namespace holoshear {

Mat2::Mat2(RNum a_, RNum b_, RNum c_, RNum d_) : a(a_), b(b_), c(c_), d(d_), lambda(a_.lambda) {
    require_same_lambda(a, b, "Mat2");
    require_same_lambda(a, c, "Mat2");
    require_same_lambda(a, d, "Mat2");
}

Mat2 Mat2::identity(Lambda l) {
    return Mat2(RNum::real(1, l), RNum::real(0, l), RNum::real(0, l), RNum::real(1, l));
}

Mat2 Mat2::from_real(double a, double b, double c, double d, Lambda l) {
    return Mat2(RNum::real(a, l), RNum::real(b, l), RNum::real(c, l), RNum::real(d, l));
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
    require_same_lambda(m.a, n.a, "Mat2 operator*");
    return Mat2(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

Mat2 operator+(const Mat2& m, const Mat2& n) {
    return Mat2(m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d);
}

Mat2 operator-(const Mat2& m, const Mat2& n) {
    return Mat2(m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d);
}

Mat2 operator*(const RNum& s, const Mat2& m) { return Mat2(s * m.a, s * m.b, s * m.c, s * m.d); }
Mat2 operator*(double s, const Mat2& m) { return Mat2(s * m.a, s * m.b, s * m.c, s * m.d); }

RNum det(const Mat2& m) { return m.a * m.d - m.b * m.c; }
RNum trace(const Mat2& m) { return m.a + m.d; }

Mat2 inverse_unit_det(const Mat2& m) {
    const RNum dt = det(m);
    const double scale = std::max(1.0, frobenius_max(m));
    if (std::abs(dt.re - 1.0) > 1e-9 * scale * scale || std::abs(dt.im) > 1e-9 * scale * scale)
        throw std::invalid_argument("inverse_unit_det: determinant is not 1");
    return Mat2(m.d, -m.b, -m.c, m.a);
}

Mat2 inverse(const Mat2& m) {
    const RNum di = inv(det(m));
    return Mat2(di * m.d, -(di * m.b), -(di * m.c), di * m.a);
}

Mat2 traceless_part(const Mat2& m) {
    const RNum h = 0.5 * trace(m);
    return Mat2(m.a - h, m.b, m.c, m.d - h);
}

double frobenius_max(const Mat2& m) {
    return std::max(std::max(abs_max(m.a), abs_max(m.b)), std::max(abs_max(m.c), abs_max(m.d)));
}

double distance(const Mat2& m, const Mat2& n) { return frobenius_max(m - n); }

bool approx_equal_up_to_sign(const Mat2& m, const Mat2& n, double tol) {
    return distance(m, n) <= tol || distance(m, -1.0 * n) <= tol;
}

Mat2 gen_E(const RNum& z) {
    const RNum zero = RNum::real(0, z.lambda);
    return Mat2(rexp(0.5 * z), zero, zero, rexp(-0.5 * z));
}

Mat2 gen_E(double x, Lambda l) { return gen_E(RNum::real(x, l)); }

Mat2 gen_L(Lambda l) { return Mat2::from_real(1, 1, 0, 1, l); }
Mat2 gen_R(Lambda l) { return Mat2::from_real(1, 0, 1, 1, l); }

// ---------------------------------------------------------------------------

LieVec::LieVec(RNum a, RNum b, RNum c) : v0(a), v1(b), v2(c), lambda(a.lambda) {
    require_same_lambda(v0, v1, "LieVec");
    require_same_lambda(v0, v2, "LieVec");
}

LieVec LieVec::basis_J(int i, Lambda l) {
    RNum c[3] = {RNum::real(0, l), RNum::real(0, l), RNum::real(0, l)};
    c[i] = RNum::real(1, l);
    return LieVec(c[0], c[1], c[2]);
}

LieVec LieVec::basis_P(int i, Lambda l) {
    RNum c[3] = {RNum::real(0, l), RNum::real(0, l), RNum::real(0, l)};
    c[i] = RNum::ell(l);
    return LieVec(c[0], c[1], c[2]);
}

LieVec operator+(const LieVec& x, const LieVec& y) { return LieVec(x.v0 + y.v0, x.v1 + y.v1, x.v2 + y.v2); }
LieVec operator-(const LieVec& x, const LieVec& y) { return LieVec(x.v0 - y.v0, x.v1 - y.v1, x.v2 - y.v2); }
LieVec operator*(const RNum& s, const LieVec& x) { return LieVec(s * x.v0, s * x.v1, s * x.v2); }

Mat2 to_matrix(const LieVec& x) {
    // sum v_i J_i = ( v1, v2 - v0; v2 + v0, -v1 ) / 2
    return Mat2(0.5 * x.v1, 0.5 * (x.v2 - x.v0), 0.5 * (x.v2 + x.v0), -0.5 * x.v1);
}

LieVec from_matrix(const Mat2& m) {
    const RNum tr = trace(m);
    if (abs_max(tr) > 1e-9)
        throw std::invalid_argument("from_matrix: matrix is not traceless");
    return LieVec(m.c - m.b, m.a - m.d, m.b + m.c);
}

RNum kappa(const LieVec& x, const LieVec& y) {
    require_same_lambda(x.v0, y.v0, "kappa");
    // Tr(Ji Jj) = eta_ij / 2
    return 0.5 * (-(x.v0 * y.v0) + x.v1 * y.v1 + x.v2 * y.v2);
}

double re_form(const LieVec& x, const LieVec& y) { return 2.0 * kappa(x, y).re; }
double im_form(const LieVec& x, const LieVec& y) { return 2.0 * kappa(x, y).im; }

bool form_combination_nondegenerate(double mu, double nu, Lambda l) {
    return mu * mu * lambda_value(l) + nu * nu != 0.0;
}

LieVec ad_action(const Mat2& g, const LieVec& x) {
    return from_matrix(g * to_matrix(x) * inverse_unit_det(g));
}

// ---------------------------------------------------------------------------

namespace {

RealMat2 entrywise(const Mat2& m, double (*pick)(const RNum&)) {
    return RealMat2{pick(m.a), pick(m.b), pick(m.c), pick(m.d)};
}

RealMat2 real_mul(const RealMat2& m, const RealMat2& n) {
    return RealMat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                    m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

double real_dist(const RealMat2& m, const RealMat2& n) {
    return std::max(std::max(std::abs(m.a - n.a), std::abs(m.b - n.b)),
                    std::max(std::abs(m.c - n.c), std::abs(m.d - n.d)));
}

} // namespace

Decomposed decompose(const Mat2& m, double det_tol) {
    const RNum dt = det(m);
    if (std::abs(dt.re - 1.0) > det_tol || std::abs(dt.im) > det_tol)
        throw std::invalid_argument("decompose: determinant is not 1");
    switch (m.lambda) {
        case Lambda::Minus: {
            auto plus = entrywise(m, [](const RNum& z) { return z.re + z.im; });
            auto minus = entrywise(m, [](const RNum& z) { return z.re - z.im; });
            return DecomposedPair{plus, minus};
        }
        case Lambda::Zero: {
            auto X = entrywise(m, [](const RNum& z) { return z.re; });
            auto Y = entrywise(m, [](const RNum& z) { return z.im; });
            const double dx = X.a * X.d - X.b * X.c;
            RealMat2 Xinv{X.d / dx, -X.b / dx, -X.c / dx, X.a / dx};
            RealMat2 T = real_mul(Y, Xinv);
            // J-basis coefficients of the (traceless) translation part
            return DecomposedSemidirect{X, {T.c - T.b, T.a - T.d, T.b + T.c}};
        }
        case Lambda::Plus:
            return DecomposedComplex{m};
    }
    throw std::logic_error("decompose: unknown lambda");
}

Decomposed decompose_mul(const Decomposed& u, const Decomposed& v) {
    if (u.index() != v.index())
        throw std::invalid_argument("decompose_mul: mixed decompositions");
    if (std::holds_alternative<DecomposedPair>(u)) {
        const auto& a = std::get<DecomposedPair>(u);
        const auto& b = std::get<DecomposedPair>(v);
        return DecomposedPair{real_mul(a.plus, b.plus), real_mul(a.minus, b.minus)};
    }
    if (std::holds_alternative<DecomposedSemidirect>(u)) {
        const auto& a = std::get<DecomposedSemidirect>(u);
        const auto& b = std::get<DecomposedSemidirect>(v);
        // (X1, T1)(X2, T2) = (X1 X2, T1 + Ad_{X1} T2)
        RealMat2 X = real_mul(a.base, b.base);
        const auto& t = b.translation;
        RealMat2 T2{0.5 * t[1], 0.5 * (t[2] - t[0]), 0.5 * (t[2] + t[0]), -0.5 * t[1]};
        const double dx = a.base.a * a.base.d - a.base.b * a.base.c;
        RealMat2 Binv{a.base.d / dx, -a.base.b / dx, -a.base.c / dx, a.base.a / dx};
        RealMat2 AdT = real_mul(real_mul(a.base, T2), Binv);
        std::array<double, 3> tr{a.translation[0] + (AdT.c - AdT.b),
                                 a.translation[1] + (AdT.a - AdT.d),
                                 a.translation[2] + (AdT.b + AdT.c)};
        return DecomposedSemidirect{X, tr};
    }
    const auto& a = std::get<DecomposedComplex>(u);
    const auto& b = std::get<DecomposedComplex>(v);
    return DecomposedComplex{a.m * b.m};
}

double decomposed_distance(const Decomposed& u, const Decomposed& v) {
    if (u.index() != v.index())
        throw std::invalid_argument("decomposed_distance: mixed decompositions");
    if (std::holds_alternative<DecomposedPair>(u)) {
        const auto& a = std::get<DecomposedPair>(u);
        const auto& b = std::get<DecomposedPair>(v);
        return std::max(real_dist(a.plus, b.plus), real_dist(a.minus, b.minus));
    }
    if (std::holds_alternative<DecomposedSemidirect>(u)) {
        const auto& a = std::get<DecomposedSemidirect>(u);
        const auto& b = std::get<DecomposedSemidirect>(v);
        double dt = 0;
        for (int i = 0; i < 3; ++i) dt = std::max(dt, std::abs(a.translation[i] - b.translation[i]));
        return std::max(real_dist(a.base, b.base), dt);
    }
    return distance(std::get<DecomposedComplex>(u).m, std::get<DecomposedComplex>(v).m);
}

double geodesic_length(const RNum& tr) {
    const double t = std::abs(tr.re);
    if (t < 2.0)
        throw std::domain_error("geodesic_length: |Re trace| < 2, element is not hyperbolic");
    return 2.0 * std::acosh(t / 2.0);
}

} // namespace holoshear
