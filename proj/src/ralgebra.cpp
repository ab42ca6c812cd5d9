#include "holoshear/ralgebra.hpp"

#include <cmath>
#include <limits>

namespace holoshear {

Lambda lambda_from_int(int v) {
    switch (v) {
        case -1: return Lambda::Minus;
        case 0: return Lambda::Zero;
        case 1: return Lambda::Plus;
    }
    throw std::invalid_argument("lambda must be -1, 0 or 1, got " + std::to_string(v));
}

const char* lambda_name(Lambda l) {
    switch (l) {
        case Lambda::Minus: return "-1";
        case Lambda::Zero: return "0";
        case Lambda::Plus: return "1";
    }
    return "?";
}

void require_same_lambda(const RNum& a, const RNum& b, const char* where) {
    if (a.lambda != b.lambda)
        throw LambdaMismatchError(std::string(where) + ": mixed-lambda arithmetic (" +
                                  lambda_name(a.lambda) + " vs " + lambda_name(b.lambda) + ")");
}

RNum operator+(const RNum& a, const RNum& b) {
    require_same_lambda(a, b, "operator+");
    return RNum(a.re + b.re, a.im + b.im, a.lambda);
}

RNum operator-(const RNum& a, const RNum& b) {
    require_same_lambda(a, b, "operator-");
    return RNum(a.re - b.re, a.im - b.im, a.lambda);
}

RNum operator-(const RNum& a) { return RNum(-a.re, -a.im, a.lambda); }

RNum operator*(const RNum& a, const RNum& b) {
    require_same_lambda(a, b, "operator*");
    const double L = lambda_value(a.lambda);
    return RNum(a.re * b.re - L * a.im * b.im, a.re * b.im + a.im * b.re, a.lambda);
}

RNum mul(const RNum& a, const RNum& b) { return a * b; }

double norm_form(const RNum& a) {
    return a.re * a.re + lambda_value(a.lambda) * a.im * a.im;
}

RNum inv(const RNum& a) {
    const double n = norm_form(a);
    if (n == 0.0)
        throw ZeroDivisorError("inv: element is a zero divisor (norm form vanishes)");
    return RNum(a.re / n, -a.im / n, a.lambda);
}

RNum operator/(const RNum& a, const RNum& b) { return a * inv(b); }

RNum conj(const RNum& a) { return RNum(a.re, -a.im, a.lambda); }

double abs_max(const RNum& a) { return std::max(std::abs(a.re), std::abs(a.im)); }

// ---------------------------------------------------------------------------
// Real dilogarithm.
// ---------------------------------------------------------------------------

namespace {

constexpr double kPi2_6 = kPi * kPi / 6.0;

double li2_series(double t) {
    // plain power series, |t| <= 0.5
    double sum = 0.0, term = t;
    for (int k = 1; k < 200; ++k) {
        sum += term / (static_cast<double>(k) * k);
        term *= t;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

} // namespace

double li2(double t) {
    if (!(t <= 1.0))
        throw BranchDomainError("li2: real dilogarithm requires t <= 1, got " + std::to_string(t));
    if (t == 1.0) return kPi2_6;
    if (t == 0.0) return 0.0;
    if (t < -1.0) {
        // inversion: Li2(t) + Li2(1/t) = -pi^2/6 - log^2(-t)/2
        const double lg = std::log(-t);
        return -kPi2_6 - 0.5 * lg * lg - li2_series(1.0 / t);
    }
    if (t < -0.5) {
        // Landen: Li2(t) = -Li2(t/(t-1)) - log^2(1-t)/2, t/(t-1) in [1/3, 1/2]
        const double l1 = std::log1p(-t);
        return -li2_series(t / (t - 1.0)) - 0.5 * l1 * l1;
    }
    if (t <= 0.5) return li2_series(t);
    // reflection: Li2(t) = pi^2/6 - log(t)log(1-t) - Li2(1-t)
    return kPi2_6 - std::log(t) * std::log1p(-t) - li2_series(1.0 - t);
}

double li2_deriv(double t) {
    if (!(t < 1.0))
        throw BranchDomainError("li2_deriv: requires t < 1");
    if (std::abs(t) < 0.25) {
        double sum = 0.0, p = 1.0;
        for (int k = 1; k < 60; ++k) {
            sum += p / k;
            p *= t;
            if (std::abs(p) < 1e-18) break;
        }
        return sum;
    }
    return -std::log1p(-t) / t;
}

double li2_negexp(double t) {
    // Li2(-e^t); for t > 0 use the inversion in closed form to avoid overflow
    if (t <= 0.0) return li2(-std::exp(t));
    return -kPi2_6 - 0.5 * t * t - li2(-std::exp(-t));
}

// ---------------------------------------------------------------------------
// Complex dilogarithm (principal branch).
// ---------------------------------------------------------------------------

namespace {

// Bernoulli numbers B_0..B_60 (even indices; B_1 = -1/2 handled separately).
constexpr double kBernoulli[] = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
    1520097643918070802691.0 / 1806.0,
    -27833269579301024235023.0 / 690.0,
    596451111593912163277961.0 / 282.0,
    -5609403368997817686249127547.0 / 46410.0,
    495057205241079648212477525.0 / 66.0,
    -801165718135489957347924991853.0 / 1590.0,
    29149963634884862421418123812691.0 / 798.0,
    -2479392929313226753685415739663229.0 / 870.0,
    84483613348880041862046775994036021.0 / 354.0,
    -1215233140483755572040304994079820246041491.0 / 56786730.0,
};

std::complex<double> li2_bernoulli(std::complex<double> z) {
    // Li2(z) = sum_{n>=0} B_n u^{n+1}/(n+1)!,  u = -log(1-z), |u| < 2*pi
    const std::complex<double> u = -std::log(1.0 - z);
    const std::complex<double> u2 = u * u;
    std::complex<double> sum = u - u2 / 4.0;   // n = 0 and n = 1 terms
    std::complex<double> upow = u;             // u^{2k+1} as k advances
    double fact = 1.0;                         // (2k+1)!
    for (int k = 1; k <= 30; ++k) {
        upow *= u2;
        fact *= (2.0 * k) * (2.0 * k + 1.0);
        const std::complex<double> term = kBernoulli[k] * upow / fact;
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

} // namespace

std::complex<double> li2_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
    if (z.imag() == 0.0 && z.real() >= 1.0) {
        if (z.real() == 1.0) return {kPi2_6, 0.0};
        throw BranchDomainError("li2_complex: argument on the branch cut [1, inf)");
    }
    if (std::abs(z) > 1.0) {
        const std::complex<double> lg = std::log(-z);
        return -kPi2_6 - 0.5 * lg * lg - li2_complex(1.0 / z);
    }
    if (z.real() > 0.5) {
        return kPi2_6 - std::log(z) * std::log(1.0 - z) - li2_complex(1.0 - z);
    }
    return li2_bernoulli(z);
}

double bloch_wigner(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0) || z == std::complex<double>(1.0, 0.0))
        throw BranchDomainError("bloch_wigner: singular at 0 and 1");
    if (z.imag() == 0.0) return 0.0;   // D vanishes on the real axis
    return std::imag(li2_complex(z)) + std::log(std::abs(z)) * std::arg(1.0 - z);
}

double bloch_wigner(const RNum& z) {
    if (z.lambda != Lambda::Plus)
        throw LambdaMismatchError("bloch_wigner: defined for lambda = +1 values");
    return bloch_wigner(std::complex<double>(z.re, z.im));
}

// ---------------------------------------------------------------------------
// Analytic extension.
// ---------------------------------------------------------------------------

RNum extend(AnalyticFn f, const RNum& z) {
    const double x = z.re, y = z.im;
    switch (z.lambda) {
        case Lambda::Plus: {
            const std::complex<double> w(x, y);
            std::complex<double> r;
            switch (f) {
                case AnalyticFn::Exp:
                    r = std::exp(w);
                    break;
                case AnalyticFn::Log:
                    if (w == std::complex<double>(0.0, 0.0))
                        throw BranchDomainError("extend(log): log of zero");
                    r = std::log(w);
                    break;
                case AnalyticFn::Li2:
                    r = li2_complex(w);
                    break;
            }
            return RNum(r.real(), r.imag(), z.lambda);
        }
        case Lambda::Zero: {
            switch (f) {
                case AnalyticFn::Exp: {
                    const double e = std::exp(x);
                    return RNum(e, e * y, z.lambda);
                }
                case AnalyticFn::Log:
                    if (x <= 0.0)
                        throw BranchDomainError("extend(log): dual-number log needs re > 0, got re = " +
                                                std::to_string(x));
                    return RNum(std::log(x), y / x, z.lambda);
                case AnalyticFn::Li2:
                    if (x >= 1.0)
                        throw BranchDomainError("extend(li2): dual-number li2 needs re < 1, got re = " +
                                                std::to_string(x));
                    return RNum(li2(x), y * li2_deriv(x), z.lambda);
            }
            break;
        }
        case Lambda::Minus: {
            const double p = x + y, q = x - y;
            double fp, fq;
            switch (f) {
                case AnalyticFn::Exp:
                    fp = std::exp(p);
                    fq = std::exp(q);
                    break;
                case AnalyticFn::Log:
                    if (p <= 0.0 || q <= 0.0)
                        throw BranchDomainError(std::string("extend(log): split-complex log needs re+im > 0 and "
                                                            "re-im > 0; offending part: ") +
                                                (p <= 0.0 ? "re+im" : "re-im"));
                    fp = std::log(p);
                    fq = std::log(q);
                    break;
                case AnalyticFn::Li2:
                    if (p > 1.0 || q > 1.0)
                        throw BranchDomainError(std::string("extend(li2): split-complex li2 needs re+im <= 1 and "
                                                            "re-im <= 1; offending part: ") +
                                                (p > 1.0 ? "re+im" : "re-im"));
                    fp = li2(p);
                    fq = li2(q);
                    break;
                default:
                    throw std::logic_error("extend: unknown function");
            }
            return RNum(0.5 * (fp + fq), 0.5 * (fp - fq), z.lambda);
        }
    }
    throw std::logic_error("extend: unknown lambda");
}

RNum rexp(const RNum& z) { return extend(AnalyticFn::Exp, z); }
RNum rlog(const RNum& z) { return extend(AnalyticFn::Log, z); }
RNum rli2(const RNum& z) { return extend(AnalyticFn::Li2, z); }

double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

RNum log1p_exp(const RNum& z) {
    const double x = z.re, y = z.im;
    switch (z.lambda) {
        case Lambda::Zero:
            // d/dx log(1+e^x) = 1/(1+e^-x)
            return RNum(softplus(x), y / (1.0 + std::exp(-x)), z.lambda);
        case Lambda::Minus: {
            const double sp = softplus(x + y), sq = softplus(x - y);
            return RNum(0.5 * (sp + sq), 0.5 * (sp - sq), z.lambda);
        }
        case Lambda::Plus: {
            std::complex<double> w(x, y);
            std::complex<double> r;
            if (x > 40.0)
                r = w + std::log(1.0 + std::exp(-w));
            else
                r = std::log(1.0 + std::exp(w));
            return RNum(r.real(), r.imag(), z.lambda);
        }
    }
    throw std::logic_error("log1p_exp: unknown lambda");
}

} // namespace holoshear
