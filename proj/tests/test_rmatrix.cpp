#include "holoshear/rmatrix.hpp"
#include "holoshear/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace holoshear;

namespace {

const Lambda kAll[] = {Lambda::Minus, Lambda::Zero, Lambda::Plus};

Mat2 random_unit_det(Rng& rng, Lambda l) {
    // random word in E(z), L, R; determinant 1 by construction
    Mat2 m = Mat2::identity(l);
    for (int i = 0; i < 4; ++i) {
        m = m * gen_E(RNum(0.6 * rng.gaussian(), 0.3 * rng.gaussian(), l));
        m = m * (rng.below(2) ? gen_L(l) : gen_R(l));
    }
    return m;
}

LieVec random_lievec(Rng& rng, Lambda l) {
    return LieVec(RNum(rng.gaussian(), rng.gaussian(), l),
                  RNum(rng.gaussian(), rng.gaussian(), l),
                  RNum(rng.gaussian(), rng.gaussian(), l));
}

} // namespace

TEST_CASE("translation generator") {
    for (Lambda l : kAll) {
        CHECK(distance(gen_E(0.0, l), Mat2::identity(l)) == 0.0);
        const Mat2 e = gen_E(1.4, l);
        CHECK(e.a.re == doctest::Approx(std::exp(0.7)));
        CHECK(e.d.re == doctest::Approx(std::exp(-0.7)));
        CHECK(abs_max(e.b) == 0.0);
    }
    // dual numbers: E(ell y) = diag(1 + ell y/2, 1 - ell y/2)
    const Mat2 e = gen_E(RNum(0, 0.8, Lambda::Zero));
    CHECK(e.a.re == doctest::Approx(1.0));
    CHECK(e.a.im == doctest::Approx(0.4));
    CHECK(e.d.im == doctest::Approx(-0.4));

    Rng rng(3);
    for (Lambda l : kAll)
        for (int t = 0; t < 30; ++t) {
            const Mat2 e2 = gen_E(RNum(2 * rng.gaussian(), rng.gaussian(), l));
            CHECK(abs_max(det(e2) - RNum::real(1, l)) < 1e-12);
        }
}

TEST_CASE("turn generators") {
    const Lambda l = Lambda::Zero;
    const Mat2 lr = gen_L(l) * gen_R(l);
    CHECK(lr.a.re == 2);
    CHECK(lr.b.re == 1);
    CHECK(lr.c.re == 1);
    CHECK(lr.d.re == 1);
    CHECK(trace(lr).re == 3);
    CHECK(trace(gen_L(l)).re == 2);
    CHECK(det(gen_R(l)).re == 1);
}

TEST_CASE("Killing form on the basis") {
    const double eta[3] = {-1, 1, 1};
    for (Lambda l : kAll) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double kij = (i == j) ? 0.5 * eta[i] : 0.0;
                const RNum k = kappa(LieVec::basis_J(i, l), LieVec::basis_J(j, l));
                CHECK(k.re == doctest::Approx(kij));
                CHECK(k.im == 0.0);
                // < Ji, Pj > = eta_ij, < Ji, Jj > = 0, ( Ji, Pj ) = 0
                CHECK(im_form(LieVec::basis_J(i, l), LieVec::basis_P(j, l)) ==
                      doctest::Approx(i == j ? eta[i] : 0.0));
                CHECK(im_form(LieVec::basis_J(i, l), LieVec::basis_J(j, l)) == 0.0);
                CHECK(re_form(LieVec::basis_J(i, l), LieVec::basis_P(j, l)) == 0.0);
                // ( Pi, Pj ) = -Lambda eta_ij
                CHECK(re_form(LieVec::basis_P(i, l), LieVec::basis_P(j, l)) ==
                      doctest::Approx(i == j ? -lambda_value(l) * eta[i] : 0.0));
            }
    }
}

TEST_CASE("kappa equals the matrix trace pairing") {
    Rng rng(17);
    for (Lambda l : kAll)
        for (int t = 0; t < 30; ++t) {
            const LieVec x = random_lievec(rng, l), y = random_lievec(rng, l);
            const RNum direct = trace(to_matrix(x) * to_matrix(y));
            CHECK(abs_max(kappa(x, y) - direct) < 1e-13);
        }
}

TEST_CASE("Ad invariance of kappa") {
    Rng rng(23);
    for (Lambda l : kAll)
        for (int t = 0; t < 40; ++t) {
            const Mat2 a = random_unit_det(rng, l);
            const LieVec x = random_lievec(rng, l), y = random_lievec(rng, l);
            CHECK(abs_max(kappa(ad_action(a, x), ad_action(a, y)) - kappa(x, y)) < 1e-10);
        }
}

TEST_CASE("matrix / coefficient round trip") {
    Rng rng(29);
    for (Lambda l : kAll)
        for (int t = 0; t < 20; ++t) {
            const LieVec x = random_lievec(rng, l);
            const LieVec back = from_matrix(to_matrix(x));
            CHECK(abs_max(back.v0 - x.v0) < 1e-14);
            CHECK(abs_max(back.v1 - x.v1) < 1e-14);
            CHECK(abs_max(back.v2 - x.v2) < 1e-14);
        }
}

TEST_CASE("decomposition per curvature") {
    // E(mu + ell nu) at lambda = -1 splits into (E(mu+nu), E(mu-nu))
    const double mu = 0.9, nu = -0.4;
    const auto d = decompose(gen_E(RNum(mu, nu, Lambda::Minus)));
    const auto& pr = std::get<DecomposedPair>(d);
    CHECK(pr.plus.a == doctest::Approx(std::exp(0.5 * (mu + nu))));
    CHECK(pr.minus.a == doctest::Approx(std::exp(0.5 * (mu - nu))));

    for (Lambda l : kAll) {
        const auto id = decompose(Mat2::identity(l));
        CHECK(decomposed_distance(id, decompose_mul(id, id)) < 1e-14);
    }

    // E(mu + ell nu) at lambda = 0 carries translation part nu J1
    const auto d0 = decompose(gen_E(RNum(mu, nu, Lambda::Zero)));
    const auto& sd = std::get<DecomposedSemidirect>(d0);
    CHECK(sd.translation[0] == doctest::Approx(0.0));
    CHECK(sd.translation[1] == doctest::Approx(nu));
    CHECK(sd.translation[2] == doctest::Approx(0.0));

    // homomorphism on random unit-determinant pairs; comparisons are relative
    // to the entry scale because word products grow exponentially
    Rng rng(31);
    for (Lambda l : kAll)
        for (int t = 0; t < 100; ++t) {
            const Mat2 m = random_unit_det(rng, l), n = random_unit_det(rng, l);
            const auto lhs = decompose(m * n);
            const auto rhs = decompose_mul(decompose(m), decompose(n));
            const double scale = std::max(1.0, frobenius_max(m * n));
            CHECK(decomposed_distance(lhs, rhs) / scale < 1e-10);
        }

    CHECK_THROWS(decompose(Mat2::from_real(2, 0, 0, 1, Lambda::Zero)));
}

TEST_CASE("geodesic length from traces") {
    CHECK(geodesic_length(RNum::real(2, Lambda::Zero)) == 0.0);
    CHECK(geodesic_length(RNum::real(3, Lambda::Plus)) ==
          doctest::Approx(2.0 * std::acosh(1.5)).epsilon(1e-14));
    CHECK(geodesic_length(RNum::real(3, Lambda::Plus)) == doctest::Approx(1.9248473002384139));
    CHECK_THROWS(geodesic_length(RNum::real(1.9, Lambda::Zero)));
}

TEST_CASE("sign-projective comparison") {
    Rng rng(37);
    const Mat2 m = random_unit_det(rng, Lambda::Plus);
    CHECK(approx_equal_up_to_sign(m, -1.0 * m, 1e-14));
    CHECK(!approx_equal_up_to_sign(m, m * gen_L(Lambda::Plus), 1e-6));
}

TEST_CASE("bilinear form combinations") {
    CHECK(!form_combination_nondegenerate(1, 1, Lambda::Minus));
    CHECK(!form_combination_nondegenerate(1, -1, Lambda::Minus));
    CHECK(form_combination_nondegenerate(1, 2, Lambda::Minus));
    CHECK(!form_combination_nondegenerate(1, 0, Lambda::Zero));
    CHECK(form_combination_nondegenerate(0, 1, Lambda::Zero));
    CHECK(form_combination_nondegenerate(1, 0, Lambda::Plus));
}
