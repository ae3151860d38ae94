#pragma once

// Samplers: chi variates, the bidiagonal (m,n,beta)-Laguerre model,
// real/complex Wishart and compound Wishart matrices.

#include "rmlab/random.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace rmlab {

/// Dense Hermitian matrices are stored complex for both flavors; the real
/// flavor has an identically zero imaginary part.
using DenseMatrix = Eigen::MatrixXcd;

enum class Flavor { real, complex };

/// (m, n, beta) with m >= n >= 1 and beta > 0.
class LaguerreParams {
public:
    LaguerreParams(int m, int n, double beta);

    int m() const { return m_; }
    int n() const { return n_; }
    double beta() const { return beta_; }
    /// (m - n + 1) beta / 2
    double alpha() const { return 0.5 * (m_ - n_ + 1) * beta_; }

    friend bool operator==(const LaguerreParams&, const LaguerreParams&) = default;

private:
    int m_;
    int n_;
    double beta_;
};

/// Symmetric tridiagonal matrix: n diagonal and n - 1 off-diagonal entries.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t size() const { return diag.size(); }
    Eigen::MatrixXd to_dense() const;
};

/// Upper bidiagonal X: diag[i] = X(i,i), superdiag[i] = X(i,i+1).
struct Bidiagonal {
    std::vector<double> diag;
    std::vector<double> superdiag;

    Eigen::MatrixXd to_dense() const;
};

/// Compound Wishart Q = X* D X with D = diag(xi), X an m x n Gaussian
/// matrix (real for beta = 1, complex for beta = 2).
class CompoundSpec {
public:
    /// xi must hold m strictly positive weights; they are stored sorted
    /// non-decreasing.
    CompoundSpec(int m, int n, int beta, std::vector<double> xi);

    int m() const { return m_; }
    int n() const { return n_; }
    int beta() const { return beta_; }
    const std::vector<double>& xi() const { return xi_; }
    double xi_min() const { return xi_.front(); }
    double xi_max() const { return xi_.back(); }
    Flavor flavor() const { return beta_ == 1 ? Flavor::real : Flavor::complex; }
    /// Parameters of the Laguerre ensemble matching X*X.
    LaguerreParams laguerre() const { return {m_, n_, static_cast<double>(beta_)}; }

private:
    int m_;
    int n_;
    int beta_;
    std::vector<double> xi_;
};

/// Gamma(shape, scale 1) by Marsaglia-Tsang; shapes below one use
/// G(a) = G(a + 1) U^{1/a}, evaluated in log space.
double sample_gamma(double shape, RandomStream& rng);

/// chi_s as sqrt(2 Gamma(s/2)). Throws ParameterError for s <= 0.
double sample_chi(double s, RandomStream& rng);

/// Draws d_1, e_1, d_2, e_2, ..., d_n in that order with
/// d_i ~ chi_{(m-i+1) beta} and e_i ~ chi_{(n-i) beta}.
Bidiagonal sample_bidiagonal(const LaguerreParams& params, RandomStream& rng);

/// X^T X in tridiagonal form: diag[i] = d_i^2 + e_{i-1}^2, offdiag[i] = d_i e_i.
SymTridiagonal gram(const Bidiagonal& x);

SymTridiagonal sample_laguerre(const LaguerreParams& params, RandomStream& rng);

/// m x n matrix of i.i.d. N(0,1) (real) or (x + iy)/sqrt(2) (complex) entries,
/// filled column-major.
DenseMatrix sample_gaussian(int m, int n, Flavor flavor, RandomStream& rng);

/// X* D X with D = diag(weights); the result is exactly Hermitian.
DenseMatrix weighted_gram(const DenseMatrix& x, const std::vector<double>& weights);

/// P = A* A, A from sample_gaussian.
DenseMatrix sample_wishart(int m, int n, Flavor flavor, RandomStream& rng);

DenseMatrix sample_compound_wishart(const CompoundSpec& spec, RandomStream& rng);

/// S = X*X and Q = X*DX built from the same X draw.
struct CoupledCompound {
    DenseMatrix wishart;
    DenseMatrix compound;
};

CoupledCompound sample_coupled_compound(const CompoundSpec& spec, RandomStream& rng);

} // namespace rmlab
