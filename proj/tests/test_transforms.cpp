#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sepcov/transforms.hpp"

using namespace sepcov;

namespace {
const BaseModel kMp{MarchenkoPastur(0.5)};
const BaseModel kSs{ShiftedSemicircle(1.0, 0.5)};
const BaseModel kToe{ExponentialToeplitz(0.5)};
const std::vector<const BaseModel*> kAll{&kMp, &kSs, &kToe};
}  // namespace

TEST_SUITE_BEGIN("transforms");

TEST_CASE("principal square root uses the polar angle in [0, 2pi)") {
    CHECK(principal_sqrt({4.0, 0.0}) == Complex(2.0, 0.0));
    const Complex mi = principal_sqrt({-4.0, 0.0});
    CHECK(mi.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(mi.imag() == doctest::Approx(2.0));
    const Complex root_i = principal_sqrt({0.0, 1.0});
    CHECK(root_i.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(root_i.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(std::abs(root_i * root_i - Complex(0.0, 1.0)) < 1e-15);
    // image lies in the closed upper half-plane
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const Complex z(dist(gen), dist(gen));
        CHECK(principal_sqrt(z).imag() >= 0.0);
        CHECK(std::abs(principal_sqrt(z) * principal_sqrt(z) - z) < 1e-12 * std::abs(z));
    }
}

TEST_CASE("model constructors reject out-of-range parameters") {
    CHECK_THROWS_AS(MarchenkoPastur(1.0), DomainError);
    CHECK_THROWS_AS(MarchenkoPastur(0.0), DomainError);
    CHECK_THROWS_AS(ShiftedSemicircle(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ShiftedSemicircle(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(ExponentialToeplitz(1.0), DomainError);
    CHECK_THROWS_AS(ModelParams(1.2, 1.0, 0.5, 0.5), DomainError);
    CHECK(ModelParams(0.5, 1.0, 0.5, 0.5).gamma() == doctest::Approx(5.0 / 3.0));
    CHECK_NOTHROW(ExponentialToeplitz(0.0));  // identity temporal covariance
}

TEST_CASE("support intervals match the closed forms") {
    const auto mp = support_of(kMp);
    CHECK(mp.lo == doctest::Approx(std::pow(1.0 - std::sqrt(0.5), 2)));
    CHECK(mp.hi == doctest::Approx(std::pow(1.0 + std::sqrt(0.5), 2)));
    const auto ss = support_of(kSs);
    CHECK(ss.lo == doctest::Approx(0.0));
    CHECK(ss.hi == doctest::Approx(2.0));
    const auto toe = support_of(kToe);
    CHECK(toe.lo == doctest::Approx(1.0 / 3.0));
    CHECK(toe.hi == doctest::Approx(3.0));
}

TEST_CASE("Cauchy transforms agree with quadrature of the analytic densities") {
    // frozen reference values computed by adaptive quadrature of the
    // analytic laws before the transforms were written
    CHECK(cauchy(kMp, {4.0, 0.0}).real() == doctest::Approx(0.3596117967977924).epsilon(1e-8));
    CHECK(cauchy(BaseModel(ShiftedSemicircle(0.0, 1.0)), {3.0, 0.0}).real() ==
          doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK(cauchy(kToe, {4.0, 0.0}).real() == doctest::Approx(0.3805582419667733).epsilon(1e-8));

    for (const BaseModel* model : kAll) {
        for (const Complex z : {Complex(5.0, 0.5), Complex(-2.0, 1.0), Complex(3.5, 2.0)}) {
            const Complex direct = cauchy(*model, z);
            const Complex quad = testing::cauchy_by_quadrature(*model, z);
            CHECK(std::abs(direct - quad) < 1e-8);
        }
    }
}

TEST_CASE("Cauchy transform domain errors") {
    CHECK_THROWS_AS(cauchy(kMp, {1.0, 0.0}), DomainError);       // inside support
    CHECK_THROWS_AS(cauchy(kToe, {1.0, 0.0}), DomainError);      // inside support
    CHECK_THROWS_AS(cauchy(kMp, {0.0, 0.0}), DomainError);       // pole at zero
    CHECK_THROWS_AS(cauchy(kToe, {0.0, 0.0}), DomainError);      // pole at zero
    CHECK_THROWS_AS(cauchy(kToe, {3.0, 0.0}), DomainError);      // unbounded edge
    CHECK_NOTHROW(cauchy(kSs, {0.0, 0.0}));                      // finite edge value
    CHECK_NOTHROW(cauchy(kMp, {4.0, 0.0}));
}

TEST_CASE("M-transform closed forms and limits") {
    CHECK(m_transform(kMp, {3.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m_transform(kToe, {10.0 / 3.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-12));
    // M(z) = z G(z) - 1 within 1e-12 relative
    for (const BaseModel* model : kAll) {
        for (const Complex z : {Complex(4.0, 0.3), Complex(-1.0, 2.0), Complex(0.5, 5.0)}) {
            const Complex lhs = m_transform(*model, z);
            const Complex rhs = z * cauchy(*model, z) - 1.0;
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    // decay on the imaginary axis: |M(iy)| <= 10 * mean / y for large y
    for (const BaseModel* model : kAll) {
        const Complex m = m_transform(*model, {0.0, 1e6});
        CHECK(std::abs(m) <= 10.0 * mean_of(*model) / 1e6);
    }
}

TEST_CASE("N-transform values and inverse pairing") {
    CHECK(n_transform(kMp, {1.0, 0.0}).real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(n_transform(kSs, {1.0, 0.0}).real() ==
          doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(n_transform(kToe, {1.0, 0.0}).real() == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(n_transform(kMp, {0.0, 0.0}), DomainError);

    // M(N(w)) = w on the M-transform's range
    for (const BaseModel* model : kAll) {
        for (int i = 0; i < 15; ++i) {
            for (int j = 0; j < 8; ++j) {
                const Complex z(-5.0 + 25.0 * i / 14.0, 0.1 + 9.9 * j / 7.0);
                const Complex w = m_transform(*model, z);
                CHECK(std::abs(m_transform(*model, n_transform(*model, w)) - w) <= 1e-9);
            }
        }
    }
    // N(M(iy)) = iy where M is injective
    for (const BaseModel* model : kAll) {
        for (double y : {1.0, 3.0, 10.0, 30.0, 100.0}) {
            const Complex z(0.0, y);
            CHECK(std::abs(n_transform(*model, m_transform(*model, z)) - z) <=
                  1e-9 * std::abs(z));
        }
    }
}

TEST_CASE("Herglotz property: Im G < 0 on the upper half-plane") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> re(-10.0, 20.0);
    std::uniform_real_distribution<double> im(1e-6, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex z(re(gen), im(gen));
        for (const BaseModel* model : kAll) CHECK(cauchy(*model, z).imag() < 0.0);
    }
}

TEST_CASE("Cauchy asymptotics |z G(z) - 1| <= C/|z|") {
    for (const BaseModel* model : kAll) {
        double c_fit = 0.0;
        for (int k = 0; k < 32; ++k) {  // fit C on the |z| = 100 ring
            const double phi = M_PI * (k + 0.5) / 32.0;
            const Complex z = 100.0 * Complex(std::cos(phi), std::sin(phi));
            c_fit = std::max(c_fit, std::abs(z * cauchy(*model, z) - 1.0) * std::abs(z));
        }
        for (double rad : {100.0, 316.0, 1000.0, 31623.0}) {
            for (int k = 0; k < 16; ++k) {
                const double phi = M_PI * (k + 0.5) / 16.0;
                const Complex z = rad * Complex(std::cos(phi), std::sin(phi));
                CHECK(std::abs(z * cauchy(*model, z) - 1.0) <= 1.05 * c_fit / std::abs(z));
            }
        }
    }
}

TEST_CASE("M-transform half-plane lemma on the imaginary axis") {
    for (double y : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const Complex z(0.0, y);
        for (const BaseModel* model : kAll) CHECK(m_transform(*model, z).real() < 0.0);
        CHECK(m_transform(kMp, z).imag() < 0.0);
        CHECK(m_transform(kToe, z).imag() < 0.0);
    }
}

TEST_CASE("composed N-transform: closed form vs factored route") {
    const ModelParams params(0.5, 1.0, 0.5, 0.5);
    // frozen from a by-hand evaluation of the closed form
    CHECK(n_composed(params, {1.0, 0.0}).real() ==
          doctest::Approx(4.913368231663171).epsilon(1e-12));
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(1e-3, 6.0);
    for (int i = 0; i < 500; ++i) {
        const Complex w(re(gen), -im(gen));
        const Complex a = n_composed(params, w);
        const Complex b = n_composed_factored(params, w);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(a) + 1e-12);
    }
}

TEST_CASE("composed N-transform degenerations and symmetry") {
    // beta -> 0, r -> 0, alpha = 1 collapses onto the Marchenko-Pastur ensemble
    const ModelParams degenerate(0.5, 1.0, 0.0, 0.0);
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        const Complex w(re(gen), -im(gen));
        const Complex lhs = n_composed(degenerate, w);
        const Complex rhs = n_transform(kMp, w);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
    // real on the negative real axis between the poles
    const ModelParams params(0.5, 1.0, 0.5, 0.5);
    for (double w : {-0.9, -0.5, -0.2, -0.05}) {
        CHECK(std::abs(n_composed(params, {w, 0.0}).imag()) <= 1e-12);
    }
    CHECK_THROWS_AS(n_composed(params, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(n_composed(params, {-1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(n_composed(params, {-2.0, 0.0}), DomainError);  // -1/c
}

TEST_SUITE_END();
