#include "holoshear/ralgebra.hpp"
#include "holoshear/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace holoshear;

namespace {

const Lambda kAll[] = {Lambda::Minus, Lambda::Zero, Lambda::Plus};

// independent oracle: alternating series for Li2(-1)
double li2_minus_one_oracle() {
    double sum = 0;
    for (int k = 1; k < 20000000; ++k) {
        const double term = ((k % 2) ? -1.0 : 1.0) / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-16) break;
    }
    return sum;
}

// independent oracle: adaptive Simpson quadrature of -log(1-s)/s
double simpson(double a, double b, int n, double (*f)(double)) {
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

double li2_integrand(double s) {
    if (std::abs(s) < 1e-12) return 1.0;
    return -std::log1p(-s) / s;
}

} // namespace

TEST_CASE("multiplication law per curvature") {
    // dual: ell^2 = 0
    const RNum e0 = RNum::ell(Lambda::Zero);
    CHECK(abs_max(e0 * e0) == 0.0);
    // split-complex zero divisors: (1+ell)(1-ell) = 0
    const RNum a(1, 1, Lambda::Minus), b(1, -1, Lambda::Minus);
    CHECK(abs_max(a * b) == 0.0);
    // complex: ell^2 = -1
    const RNum i = RNum::ell(Lambda::Plus);
    const RNum sq = i * i;
    CHECK(sq.re == doctest::Approx(-1.0));
    CHECK(sq.im == 0.0);
}

TEST_CASE("mixed-lambda arithmetic is rejected") {
    CHECK_THROWS_AS(RNum::ell(Lambda::Zero) * RNum::ell(Lambda::Plus), LambdaMismatchError);
}

TEST_CASE("inversion") {
    const RNum i = RNum::ell(Lambda::Plus);
    const RNum ii = inv(i);
    CHECK(ii.re == doctest::Approx(0.0));
    CHECK(ii.im == doctest::Approx(-1.0));

    // solve (2+ell)(u+ell v) = 1 by hand: u = 1/2, v = -1/4
    const RNum d(2, 1, Lambda::Zero);
    const RNum di = inv(d);
    CHECK(di.re == doctest::Approx(0.5));
    CHECK(di.im == doctest::Approx(-0.25));
    CHECK(abs_max(d * di - RNum::real(1, Lambda::Zero)) < 1e-15);

    CHECK_THROWS_AS(inv(RNum(1, 1, Lambda::Minus)), ZeroDivisorError);
}

TEST_CASE("ring axioms on random samples") {
    for (Lambda l : kAll) {
        Rng rng(42 + static_cast<int>(l));
        for (int t = 0; t < 200; ++t) {
            const RNum a(rng.gaussian(), rng.gaussian(), l);
            const RNum b(rng.gaussian(), rng.gaussian(), l);
            const RNum c(rng.gaussian(), rng.gaussian(), l);
            CHECK(abs_max((a + b) + c - (a + (b + c))) < 1e-14);
            CHECK(abs_max((a * b) * c - (a * (b * c))) < 1e-14);
            CHECK(abs_max(a * (b + c) - (a * b + a * c)) < 1e-14);
            CHECK(abs_max(a * b - b * a) == 0.0);
        }
        // integer inputs: exact
        const RNum a(3, -2, l), b(-1, 4, l), c(2, 5, l);
        CHECK(abs_max((a * b) * c - a * (b * c)) == 0.0);
    }
}

TEST_CASE("idempotents in the split-complex algebra") {
    const RNum ep = e_plus(Lambda::Minus), em = e_minus(Lambda::Minus);
    CHECK(abs_max(ep * ep - ep) == 0.0);
    CHECK(abs_max(em * em - em) == 0.0);
    CHECK(abs_max(ep * em) == 0.0);
}

TEST_CASE("extension of exp") {
    for (Lambda l : kAll) {
        CHECK(abs_max(rexp(RNum::real(0, l)) - RNum::real(1, l)) == 0.0);
    }
    // dual numbers: e^{x+ell y} = e^x (1 + ell y)
    const RNum z(0.7, -1.3, Lambda::Zero);
    const RNum e = rexp(z);
    CHECK(e.re == doctest::Approx(std::exp(0.7)).epsilon(1e-14));
    CHECK(e.im == doctest::Approx(std::exp(0.7) * -1.3).epsilon(1e-14));
}

TEST_CASE("extension of log, split-complex half-sum") {
    const RNum z(1.0, 0.5, Lambda::Minus);
    const RNum lg = rlog(z);
    const double f15 = std::log(1.5), f05 = std::log(0.5);
    CHECK(lg.re == doctest::Approx(0.5 * (f15 + f05)).epsilon(1e-14));
    CHECK(lg.im == doctest::Approx(0.5 * (f15 - f05)).epsilon(1e-14));
    CHECK_THROWS_AS(rlog(RNum(1.0, 1.5, Lambda::Minus)), BranchDomainError);
    CHECK_THROWS_AS(rlog(RNum(-1.0, 0.5, Lambda::Zero)), BranchDomainError);
    CHECK_THROWS_AS(rlog(RNum(0.0, 0.0, Lambda::Plus)), BranchDomainError);
}

TEST_CASE("exp/log functional identities") {
    for (Lambda l : kAll) {
        Rng rng(7 + static_cast<int>(l));
        for (int t = 0; t < 100; ++t) {
            const RNum z(1.5 * rng.gaussian(), 0.8 * rng.gaussian(), l);
            CHECK(abs_max(rexp(z) * rexp(-z) - RNum::real(1, l)) < 1e-12);
            // stay inside the log domain (and off the lambda=1 branch cut)
            RNum w(0.5 + 0.2 * std::abs(rng.gaussian()), 0.1 * rng.gaussian(), l);
            if (l == Lambda::Minus && std::abs(w.im) >= w.re) w.im = 0.5 * w.re;
            CHECK(abs_max(rlog(rexp(w)) - w) < 1e-10);
        }
    }
}

TEST_CASE("generalized Cauchy-Riemann equations by finite differences") {
    const double h = 1e-6, tol = 1e-5;
    for (Lambda l : kAll) {
        const double L = lambda_value(l);
        for (AnalyticFn f : {AnalyticFn::Exp, AnalyticFn::Log, AnalyticFn::Li2}) {
            // base points well inside every domain: log needs positives,
            // li2 needs parts < 1
            const double x0 = f == AnalyticFn::Li2 ? -0.4 : 0.9;
            const double y0 = 0.2;
            auto F = [&](double x, double y) { return extend(f, RNum(x, y, l)); };
            const RNum fx = (1.0 / (2 * h)) * (F(x0 + h, y0) - F(x0 - h, y0));
            const RNum fy = (1.0 / (2 * h)) * (F(x0, y0 + h) - F(x0, y0 - h));
            CHECK(std::abs(fx.re - fy.im) < tol);          // dRe/dx = dIm/dy
            CHECK(std::abs(fx.im * -L - fy.re) < tol);     // dRe/dy = -L dIm/dx
        }
    }
}

TEST_CASE("real dilogarithm values and accuracy") {
    CHECK(li2(0.0) == 0.0);
    CHECK(li2(1.0) == doctest::Approx(kPi * kPi / 6.0));
    CHECK(li2(-1.0) == doctest::Approx(li2_minus_one_oracle()).epsilon(1e-13));
    // closed form at 1/2
    CHECK(li2(0.5) ==
          doctest::Approx(kPi * kPi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0)).epsilon(1e-14));
    // quadrature oracle at -2
    const double quad = simpson(0.0, -2.0, 200000, li2_integrand);
    CHECK(li2(-2.0) == doctest::Approx(quad).epsilon(1e-12));
    // derivative identity Li2'(t) = -log(1-t)/t across the negative range
    for (double t : {-0.9, -3.0, -40.0, -2000.0}) {
        const double h = 1e-6 * std::max(1.0, std::abs(t));
        const double fd = (li2(t + h) - li2(t - h)) / (2 * h);
        CHECK(fd == doctest::Approx(-std::log1p(-t) / t).epsilon(1e-7));
    }
    // large-magnitude arguments stay consistent with the inversion relation
    for (double t : {-10.0, -1e3, -1e6}) {
        const double lhs = li2(t) + li2(1.0 / t);
        const double rhs = -kPi * kPi / 6.0 - 0.5 * std::log(-t) * std::log(-t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    CHECK_THROWS_AS(li2(1.5), BranchDomainError);
}

TEST_CASE("complex dilogarithm and Bloch-Wigner") {
    // real arguments below 1 agree with the real evaluation
    for (double t : {-5.0, -0.7, 0.3, 0.9}) {
        const auto c = li2_complex({t, 0.0});
        CHECK(c.real() == doctest::Approx(li2(t)).epsilon(1e-13));
        CHECK(std::abs(c.imag()) < 1e-15);
    }
    CHECK_THROWS_AS(li2_complex({1.5, 0.0}), BranchDomainError);

    CHECK(bloch_wigner(std::complex<double>(0.37, 0.0)) == 0.0);
    CHECK(bloch_wigner(std::complex<double>(-4.2, 0.0)) == 0.0);
    CHECK_THROWS_AS(bloch_wigner(std::complex<double>(0.0, 0.0)), BranchDomainError);

    // six-fold symmetry: D(1/z) = -D(z) and D(1-z) = -D(z)
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const std::complex<double> z(rng.gaussian(), 0.3 + std::abs(rng.gaussian()));
        const double d = bloch_wigner(z);
        CHECK(bloch_wigner(1.0 / z) == doctest::Approx(-d).epsilon(1e-10));
        CHECK(bloch_wigner(1.0 - z) == doctest::Approx(-d).epsilon(1e-10));
    }
}

TEST_CASE("stable log(1 + e^z)") {
    for (Lambda l : kAll) {
        Rng rng(5);
        for (int t = 0; t < 50; ++t) {
            const RNum z(2.5 * rng.gaussian(), 0.8 * rng.gaussian(), l);
            const RNum direct = rlog(1.0 + rexp(z));
            CHECK(abs_max(log1p_exp(z) - direct) < 1e-12);
        }
    }
    // far in the linear regime
    const RNum big(500.0, 0.3, Lambda::Zero);
    const RNum r = log1p_exp(big);
    CHECK(r.re == doctest::Approx(500.0));
    CHECK(r.im == doctest::Approx(0.3));
}
