#pragma once

// Eigenvalue kernels for tridiagonal and dense Hermitian matrices, inverse
// power traces, and the Laguerre joint eigenvalue density.

#include "rmlab/ensembles.hpp"

#include <utility>
#include <vector>

namespace rmlab {

/// Eigenvalues sorted non-decreasing.
class Spectrum {
public:
    Spectrum() = default;
    /// Sorts its input.
    explicit Spectrum(std::vector<double> eigenvalues);

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    std::size_t size() const { return eigenvalues_.size(); }
    double smallest() const { return eigenvalues_.front(); }
    double largest() const { return eigenvalues_.back(); }

private:
    std::vector<double> eigenvalues_;
};

/// Number of eigenvalues of `s` strictly below x, from the signs of the
/// LDL^T pivots of s - xI. Pivots smaller in magnitude than a tiny pivmin
/// are replaced by -pivmin.
int sturm_count(const SymTridiagonal& s, double x);

/// [lower, upper] enclosing the spectrum (Gershgorin discs).
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& s);

/// lambda_1 to absolute accuracy `tol` by Sturm bisection. Throws
/// NumericError on non-finite entries, ParameterError on tol <= 0.
double smallest_eigenvalue(const SymTridiagonal& s, double tol);

/// All eigenvalues by implicit-shift QL. At most 60 sweeps per eigenvalue
/// before NumericError.
Spectrum eigenvalues_tridiagonal(const SymTridiagonal& s);

/// Householder reduction to a real symmetric tridiagonal matrix followed by
/// eigenvalues_tridiagonal. Input must be Hermitian to 1e-10 relative to
/// its largest entry (ParameterError otherwise).
Spectrum eigenvalues_hermitian(const DenseMatrix& q);

/// sum_i lambda_i^{-c}. DomainError on a nonpositive eigenvalue.
double trace_inverse_power(const Spectrum& spectrum, int c);

/// log of the normalisation constant
///   Z = 2^{-mn beta/2} prod_{j=1}^n Gamma(1 + beta/2) / (Gamma(1 + beta j/2) Gamma(beta (m-n+j)/2)),
/// which normalises the density over unordered eigenvalues.
double log_normalization(const LaguerreParams& params);

/// log density of the ordered eigenvalues lambda_1 <= ... <= lambda_n:
///   log n! + log Z + (alpha - 1) sum log lambda_i - sum lambda_i / 2
///     + beta sum_{k<j} log(lambda_j - lambda_k).
/// Repeated eigenvalues give -infinity; nonpositive ones throw DomainError.
double log_joint_density(const LaguerreParams& params, const Spectrum& spectrum);

} // namespace rmlab
