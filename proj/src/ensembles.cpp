#include "rmlab/ensembles.hpp"

#include "rmlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rmlab {

LaguerreParams::LaguerreParams(int m, int n, double beta) : m_(m), n_(n), beta_(beta) {
    if (n < 1) throw ParameterError("n must be at least 1");
    if (m < n) throw ParameterError("m must be at least n (got m = " + std::to_string(m) +
                                    ", n = " + std::to_string(n) + ")");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be a positive finite number");
}

Eigen::MatrixXd SymTridiagonal::to_dense() const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        out(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
        out(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
    return out;
}

Eigen::MatrixXd Bidiagonal::to_dense() const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) out(i, i + 1) = superdiag[static_cast<std::size_t>(i)];
    return out;
}

CompoundSpec::CompoundSpec(int m, int n, int beta, std::vector<double> xi)
    : m_(m), n_(n), beta_(beta), xi_(std::move(xi)) {
    if (n < 1 || m < n) throw ParameterError("compound Wishart needs m >= n >= 1");
    if (beta != 1 && beta != 2)
        throw ParameterError("compound Wishart is defined for beta in {1, 2} only (got " +
                             std::to_string(beta) + ")");
    if (static_cast<int>(xi_.size()) != m)
        throw ParameterError("xi must have m = " + std::to_string(m) + " entries (got " +
                             std::to_string(xi_.size()) + ")");
    for (double w : xi_)
        if (!(w > 0.0) || !std::isfinite(w)) throw ParameterError("xi entries must be positive and finite");
    std::sort(xi_.begin(), xi_.end());
}

double sample_gamma(double shape, RandomStream& rng) {
    if (!(shape > 0.0) || !std::isfinite(shape)) throw ParameterError("gamma shape must be positive");
    if (shape < 1.0) {
        const double boosted = sample_gamma(shape + 1.0, rng);
        return std::exp(std::log(boosted) + std::log(rng.uniform()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_chi(double s, RandomStream& rng) {
    if (!(s > 0.0)) throw ParameterError("chi degrees of freedom must be positive");
    return std::sqrt(2.0 * sample_gamma(0.5 * s, rng));
}

Bidiagonal sample_bidiagonal(const LaguerreParams& params, RandomStream& rng) {
    const int m = params.m();
    const int n = params.n();
    const double beta = params.beta();
    Bidiagonal x;
    x.diag.resize(static_cast<std::size_t>(n));
    x.superdiag.resize(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i) {
        x.diag[static_cast<std::size_t>(i)] = sample_chi((m - i) * beta, rng);
        if (i + 1 < n) x.superdiag[static_cast<std::size_t>(i)] = sample_chi((n - 1 - i) * beta, rng);
    }
    return x;
}

SymTridiagonal gram(const Bidiagonal& x) {
    const std::size_t n = x.diag.size();
    SymTridiagonal s;
    s.diag.resize(n);
    s.offdiag.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double above = i > 0 ? x.superdiag[i - 1] : 0.0;
        s.diag[i] = x.diag[i] * x.diag[i] + above * above;
        if (i + 1 < n) s.offdiag[i] = x.diag[i] * x.superdiag[i];
    }
    return s;
}

SymTridiagonal sample_laguerre(const LaguerreParams& params, RandomStream& rng) {
    return gram(sample_bidiagonal(params, rng));
}

DenseMatrix sample_gaussian(int m, int n, Flavor flavor, RandomStream& rng) {
    if (m < 1 || n < 1) throw ParameterError("Gaussian matrix dimensions must be positive");
    DenseMatrix a(m, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            if (flavor == Flavor::real) {
                a(i, j) = {rng.normal(), 0.0};
            } else {
                const double re = rng.normal();
                const double im = rng.normal();
                a(i, j) = {re * inv_sqrt2, im * inv_sqrt2};
            }
        }
    }
    return a;
}

DenseMatrix weighted_gram(const DenseMatrix& x, const std::vector<double>& weights) {
    if (static_cast<Eigen::Index>(weights.size()) != x.rows())
        throw ParameterError("weight count does not match the row count");
    const Eigen::Index n = x.cols();
    DenseMatrix q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            std::complex<double> acc = 0.0;
            for (Eigen::Index k = 0; k < x.rows(); ++k)
                acc += weights[static_cast<std::size_t>(k)] * std::conj(x(k, i)) * x(k, j);
            if (i == j) acc.imag(0.0);
            q(i, j) = acc;
            q(j, i) = std::conj(acc);
        }
    }
    return q;
}

DenseMatrix sample_wishart(int m, int n, Flavor flavor, RandomStream& rng) {
    if (m < n) throw ParameterError("Wishart sampling needs m >= n");
    const DenseMatrix a = sample_gaussian(m, n, flavor, rng);
    return weighted_gram(a, std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

DenseMatrix sample_compound_wishart(const CompoundSpec& spec, RandomStream& rng) {
    const DenseMatrix x = sample_gaussian(spec.m(), spec.n(), spec.flavor(), rng);
    return weighted_gram(x, spec.xi());
}

CoupledCompound sample_coupled_compound(const CompoundSpec& spec, RandomStream& rng) {
    const DenseMatrix x = sample_gaussian(spec.m(), spec.n(), spec.flavor(), rng);
    return {weighted_gram(x, std::vector<double>(static_cast<std::size_t>(spec.m()), 1.0)),
            weighted_gram(x, spec.xi())};
}

} // namespace rmlab
