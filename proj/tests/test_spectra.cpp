#include "doctest.h"

#include "rmlab/errors.hpp"
#include "rmlab/spectra.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

using namespace rmlab;

namespace {

SymTridiagonal tri(std::vector<double> d, std::vector<double> e) { return {std::move(d), std::move(e)}; }

// Ordered-wedge density of (lambda_1 <= lambda_2) written out by hand for n = 2.
double wedge_density_n2(const LaguerreParams& p, double l1, double l2) {
    return std::exp(log_joint_density(p, Spectrum({l1, l2})));
}

// int_0^inf int_{l1}^inf density, restricted to l1 >= a.
double wedge_mass_above(const LaguerreParams& p, double a) {
    boost::math::quadrature::exp_sinh<double> outer, inner;
    auto row = [&](double s) {
        const double l1 = a + s;
        return inner.integrate([&](double t) { return t > 0.0 ? wedge_density_n2(p, l1, l1 + t) : 0.0; }, 1e-12);
    };
    return outer.integrate([&](double s) { return a + s > 0.0 ? row(s) : 0.0; }, 1e-11);
}

} // namespace

TEST_CASE("smallest eigenvalue of named matrices") {
    CHECK(smallest_eigenvalue(tri({3, 5}, {0}), 1e-12) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(smallest_eigenvalue(tri({2, 2}, {1}), 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(smallest_eigenvalue(tri({7}, {}), 1e-12) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(sturm_count(tri({3, 5}, {0}), 4.0) == 1);
    CHECK(sturm_count(tri({3, 5}, {0}), 2.9) == 0);
    CHECK(sturm_count(tri({3, 5}, {0}), 5.1) == 2);
    const auto [lo, hi] = gershgorin_bounds(tri({2, 2}, {1}));
    CHECK(lo == 1.0);
    CHECK(hi == 3.0);
}

TEST_CASE("kernel input errors") {
    CHECK_THROWS_AS(smallest_eigenvalue(tri({1, 2}, {0}), 0.0), ParameterError);
    CHECK_THROWS_AS(smallest_eigenvalue(tri({1, std::nan("")}, {0}), 1e-10), NumericError);
    CHECK_THROWS_AS(smallest_eigenvalue(tri({1, 2}, {std::numeric_limits<double>::infinity()}), 1e-10), NumericError);
    CHECK_THROWS_AS(eigenvalues_tridiagonal(tri({1, 2}, {0, 1})), ParameterError);
    CHECK_THROWS_AS(eigenvalues_tridiagonal(tri({}, {})), ParameterError);
    DenseMatrix q(2, 2);
    q << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(eigenvalues_hermitian(q), ParameterError);
    CHECK_THROWS_AS(eigenvalues_hermitian(DenseMatrix(2, 3)), ParameterError);
}

TEST_CASE("n = 2 closed form") {
    for (auto [a, b, e] : {std::tuple{1.0, 4.0, 0.5}, std::tuple{2.0, 2.0, 3.0}, std::tuple{1e-6, 9.0, 1e-3}}) {
        const double mid = 0.5 * (a + b);
        const double rad = std::hypot(0.5 * (a - b), e);
        const auto s = tri({a, b}, {e});
        const Spectrum spec = eigenvalues_tridiagonal(s);
        CHECK(spec.smallest() == doctest::Approx(mid - rad).epsilon(1e-12).scale(b));
        CHECK(spec.largest() == doctest::Approx(mid + rad).epsilon(1e-12));
        CHECK(smallest_eigenvalue(s, 1e-14) == doctest::Approx(mid - rad).epsilon(1e-12).scale(b));
    }
}

TEST_CASE("bisection agrees with QL on Laguerre draws") {
    const LaguerreParams cases[] = {{4, 3, 1.0}, {6, 4, 1.0}, {10, 8, 2.0}, {5, 3, 0.5}, {12, 12, 1.5}};
    RandomStream root(100);
    int draw = 0;
    for (const auto& p : cases) {
        for (int i = 0; i < 200; ++i, ++draw) {
            RandomStream rng = root.substream(static_cast<std::uint64_t>(draw));
            const auto s = sample_laguerre(p, rng);
            const Spectrum spec = eigenvalues_tridiagonal(s);
            CHECK(std::abs(smallest_eigenvalue(s, 1e-12) - spec.smallest()) <= 1e-10);
            double trace = 0.0, eig_sum = 0.0;
            for (double d : s.diag) trace += d;
            for (double l : spec.eigenvalues()) eig_sum += l;
            CHECK(eig_sum == doctest::Approx(trace).epsilon(1e-12));
            for (double l : spec.eigenvalues()) CHECK(l >= -1e-12 * spec.largest());
        }
    }
}

TEST_CASE("QL agrees with Eigen's symmetric solver") {
    RandomStream root(7);
    for (std::uint64_t i = 0; i < 200; ++i) {
        RandomStream rng = root.substream(i);
        const int n = 1 + static_cast<int>(rng.next_u64() % 15);
        SymTridiagonal s;
        for (int k = 0; k < n; ++k) s.diag.push_back(rng.normal());
        for (int k = 0; k + 1 < n; ++k) s.offdiag.push_back(rng.normal());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.to_dense(), Eigen::EigenvaluesOnly);
        const Spectrum spec = eigenvalues_tridiagonal(s);
        const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(spec.eigenvalues()[static_cast<std::size_t>(k)] - solver.eigenvalues()(k)) <= 1e-12 * scale);
    }
}

TEST_CASE("Hermitian eigenvalues agree with Eigen's solver") {
    RandomStream root(9);
    for (std::uint64_t i = 0; i < 100; ++i) {
        RandomStream rng = root.substream(i);
        const Flavor flavor = i % 2 ? Flavor::complex : Flavor::real;
        const int n = 1 + static_cast<int>(i % 7);
        const DenseMatrix p = sample_wishart(n + 2, n, flavor, rng);
        Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(p, Eigen::EigenvaluesOnly);
        const Spectrum spec = eigenvalues_hermitian(p);
        const double scale = solver.eigenvalues().maxCoeff();
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(spec.eigenvalues()[static_cast<std::size_t>(k)] - solver.eigenvalues()(k)) <= 1e-12 * scale);
    }
}

TEST_CASE("trace of inverse powers") {
    CHECK(trace_inverse_power(Spectrum({1.0, 2.0}), 1) == 1.5);
    CHECK(trace_inverse_power(Spectrum({1.0, 2.0}), 2) == 1.25);
    CHECK(trace_inverse_power(Spectrum({0.5}), 3) == 8.0);
    CHECK_THROWS_AS(trace_inverse_power(Spectrum({0.0, 1.0}), 1), DomainError);
    CHECK_THROWS_AS(trace_inverse_power(Spectrum({-1.0, 1.0}), 1), DomainError);
    CHECK_THROWS_AS(trace_inverse_power(Spectrum({1.0}), 0), ParameterError);

    RandomStream root(3);
    for (std::uint64_t i = 0; i < 50; ++i) {
        RandomStream rng = root.substream(i);
        const auto s = sample_laguerre(LaguerreParams(7, 4, 2.0), rng);
        const Eigen::MatrixXd inv = s.to_dense().inverse();
        Eigen::MatrixXd power = inv;
        for (int c = 1; c <= 3; ++c) {
            CHECK(trace_inverse_power(eigenvalues_tridiagonal(s), c) == doctest::Approx(power.trace()).epsilon(1e-9));
            power = power * inv;
        }
    }
}

TEST_CASE("n = 1 density is the Gamma(m beta / 2, scale 2) density") {
    for (const LaguerreParams& p : {LaguerreParams(3, 1, 1.0), LaguerreParams(4, 1, 2.0), LaguerreParams(2, 1, 0.6)}) {
        const double shape = 0.5 * p.m() * p.beta();
        for (double x : {0.01, 0.5, 1.0, 3.0, 12.0}) {
            const double expected = std::log(boost::math::gamma_p_derivative(shape, x / 2.0) / 2.0);
            CHECK(log_joint_density(p, Spectrum({x})) == doctest::Approx(expected).epsilon(1e-12));
        }
        boost::math::quadrature::exp_sinh<double> integrator;
        const double total =
            integrator.integrate([&](double x) { return x > 0.0 ? std::exp(log_joint_density(p, Spectrum({x}))) : 0.0; });
        CHECK(std::abs(total - 1.0) < 1e-8);
    }
}

TEST_CASE("n = 2 ordered density integrates to one") {
    for (const LaguerreParams& p : {LaguerreParams(3, 2, 1.0), LaguerreParams(4, 2, 2.0), LaguerreParams(5, 2, 0.7)}) {
        CAPTURE(p.m());
        CHECK(std::abs(wedge_mass_above(p, 0.0) - 1.0) < 1e-5);
    }
}

TEST_CASE("n = 2, m = 3, beta = 1 density by hand") {
    // Z = 1/8 normalises over unordered pairs; ordering doubles it.
    const LaguerreParams p(3, 2, 1.0);
    CHECK(log_normalization(p) == doctest::Approx(std::log(1.0 / 8.0)).epsilon(1e-13));
    const double l1 = 0.7, l2 = 2.3;
    const double expected = 2.0 / 8.0 * std::exp(-(l1 + l2) / 2.0) * (l2 - l1);
    CHECK(std::exp(log_joint_density(p, Spectrum({l1, l2}))) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("density is symmetric, -inf on ties, and rejects bad input") {
    const LaguerreParams p(6, 3, 1.5);
    CHECK(log_joint_density(p, Spectrum({0.4, 2.0, 5.0})) == log_joint_density(p, Spectrum({5.0, 0.4, 2.0})));
    CHECK(log_joint_density(p, Spectrum({1.0, 1.0, 3.0})) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(log_joint_density(p, Spectrum({0.0, 1.0, 3.0})), DomainError);
    CHECK_THROWS_AS(log_joint_density(p, Spectrum({-1.0, 1.0, 3.0})), DomainError);
    CHECK_THROWS_AS(log_joint_density(p, Spectrum({1.0, 3.0})), ParameterError);
}

TEST_CASE("lambda_1 distribution for n = 2 matches the density") {
    const LaguerreParams p(4, 2, 1.0);
    const std::int64_t trials = 100000;
    const std::vector<double> points{0.1, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::int64_t> below(points.size(), 0);
    RandomStream root(55);
    for (std::int64_t i = 0; i < trials; ++i) {
        RandomStream rng = root.substream(static_cast<std::uint64_t>(i));
        const auto s = sample_laguerre(p, rng);
        for (std::size_t k = 0; k < points.size(); ++k)
            if (sturm_count(s, points[k]) >= 1) ++below[k];
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double cdf = 1.0 - wedge_mass_above(p, points[k]);
        const double p_hat = static_cast<double>(below[k]) / static_cast<double>(trials);
        const double se = std::sqrt(cdf * (1.0 - cdf) / static_cast<double>(trials));
        CAPTURE(points[k]);
        CHECK(std::abs(p_hat - cdf) < 3.0 * se);
    }
}
