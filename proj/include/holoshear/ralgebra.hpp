#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace holoshear {

// Curvature label for the two-dimensional commutative real algebra with
// ell^2 = -Lambda: split-complex (-1), dual (0), complex (+1) numbers.
enum class Lambda : int { Minus = -1, Zero = 0, Plus = 1 };

inline double lambda_value(Lambda l) { return static_cast<double>(static_cast<int>(l)); }
Lambda lambda_from_int(int v);
const char* lambda_name(Lambda l);

struct LambdaMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroDivisorError : std::domain_error {
    using std::domain_error::domain_error;
};

struct BranchDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Element x + ell*y of R_Lambda.
struct RNum {
    double re = 0.0;
    double im = 0.0;
    Lambda lambda = Lambda::Zero;

    RNum() = default;
    RNum(double x, double y, Lambda l) : re(x), im(y), lambda(l) {}

    static RNum real(double x, Lambda l) { return RNum(x, 0.0, l); }
    static RNum ell(Lambda l) { return RNum(0.0, 1.0, l); }

    bool is_real(double tol = 0.0) const { return std::abs(im) <= tol; }
};

void require_same_lambda(const RNum& a, const RNum& b, const char* where);

RNum operator+(const RNum& a, const RNum& b);
RNum operator-(const RNum& a, const RNum& b);
RNum operator-(const RNum& a);
RNum operator*(const RNum& a, const RNum& b);
RNum operator/(const RNum& a, const RNum& b);

inline RNum operator+(const RNum& a, double s) { return RNum(a.re + s, a.im, a.lambda); }
inline RNum operator+(double s, const RNum& a) { return a + s; }
inline RNum operator-(const RNum& a, double s) { return RNum(a.re - s, a.im, a.lambda); }
inline RNum operator-(double s, const RNum& a) { return RNum(s - a.re, -a.im, a.lambda); }
inline RNum operator*(const RNum& a, double s) { return RNum(a.re * s, a.im * s, a.lambda); }
inline RNum operator*(double s, const RNum& a) { return a * s; }
inline RNum operator/(const RNum& a, double s) { return RNum(a.re / s, a.im / s, a.lambda); }

RNum mul(const RNum& a, const RNum& b);

// Quadratic norm N(z) = re^2 + Lambda*im^2; z is invertible iff N(z) != 0.
double norm_form(const RNum& a);
RNum inv(const RNum& a);
RNum conj(const RNum& a);

inline RNum e_plus(Lambda l)  { return RNum(0.5,  0.5, l); }   // idempotent (1+ell)/2, Lambda = -1
inline RNum e_minus(Lambda l) { return RNum(0.5, -0.5, l); }

double abs_max(const RNum& a);   // max(|re|,|im|), a convenient test metric

// ---------------------------------------------------------------------------
// Analytic extension of real functions to R_Lambda.
//   Lambda = +1 : ordinary complex extension (principal branches)
//   Lambda =  0 : f(x) + ell f'(x) y
//   Lambda = -1 : (1+ell)/2 f(x+y) + (1-ell)/2 f(x-y)
// ---------------------------------------------------------------------------

enum class AnalyticFn { Exp, Log, Li2 };

RNum extend(AnalyticFn f, const RNum& z);

RNum rexp(const RNum& z);
RNum rlog(const RNum& z);
RNum rli2(const RNum& z);

// log(1 + e^z), numerically stable across the whole real range of Re z.
double softplus(double x);
RNum log1p_exp(const RNum& z);

// ---------------------------------------------------------------------------
// Dilogarithm.
// ---------------------------------------------------------------------------

// Real dilogarithm Li2(t), t <= 1.
double li2(double t);
// Li2'(t) = -log(1-t)/t, continuous at 0.
double li2_deriv(double t);
// Complex dilogarithm, principal branch (cut along [1, inf)).
std::complex<double> li2_complex(std::complex<double> z);
// Li2(-e^t), stable for all real t.
double li2_negexp(double t);

// Bloch-Wigner function D(z) = Im Li2(z) + log|z| arg(1-z).
double bloch_wigner(std::complex<double> z);
double bloch_wigner(const RNum& z);   // requires Lambda = +1

inline constexpr double kPi = 3.14159265358979323846;

} // namespace holoshear
