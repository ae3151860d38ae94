#include "rmlab/spectra.hpp"

#include "rmlab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rmlab {

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
    std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

namespace {

void check_shape(const SymTridiagonal& s) {
    if (s.diag.empty()) throw ParameterError("empty tridiagonal matrix");
    if (s.offdiag.size() + 1 != s.diag.size())
        throw ParameterError("tridiagonal off-diagonal must have n - 1 entries");
}

bool all_finite(const SymTridiagonal& s) {
    auto finite = [](double v) { return std::isfinite(v); };
    return std::all_of(s.diag.begin(), s.diag.end(), finite) &&
           std::all_of(s.offdiag.begin(), s.offdiag.end(), finite);
}

double pivot_floor(const SymTridiagonal& s) {
    double scale = 1.0;
    for (double b : s.offdiag) scale = std::max(scale, b * b);
    return std::numeric_limits<double>::min() * scale;
}

int sturm_count_with_floor(const SymTridiagonal& s, double x, double pivmin) {
    int count = 0;
    double q = s.diag[0] - x;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < s.diag.size(); ++i) {
        const double b = s.offdiag[i - 1];
        q = s.diag[i] - x - b * b / q;
        if (std::abs(q) <= pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace

int sturm_count(const SymTridiagonal& s, double x) {
    check_shape(s);
    return sturm_count_with_floor(s, x, pivot_floor(s));
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& s) {
    check_shape(s);
    double lower = std::numeric_limits<double>::infinity();
    double upper = -lower;
    const std::size_t n = s.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(s.offdiag[i - 1]);
        if (i + 1 < n) radius += std::abs(s.offdiag[i]);
        lower = std::min(lower, s.diag[i] - radius);
        upper = std::max(upper, s.diag[i] + radius);
    }
    return {lower, upper};
}

double smallest_eigenvalue(const SymTridiagonal& s, double tol) {
    check_shape(s);
    if (!(tol > 0.0)) throw ParameterError("bisection tolerance must be positive");
    if (!all_finite(s)) throw NumericError("cannot bracket the spectrum of a matrix with non-finite entries");
    auto [lo, hi] = gershgorin_bounds(s);
    // Widen so the bracket is strict even for a diagonal matrix.
    const double pad = std::max(1.0, std::max(std::abs(lo), std::abs(hi))) * 4 * std::numeric_limits<double>::epsilon();
    lo -= pad;
    hi += pad;
    const double pivmin = pivot_floor(s);
    if (sturm_count_with_floor(s, lo, pivmin) != 0 || sturm_count_with_floor(s, hi, pivmin) < 1)
        throw NumericError("Gershgorin bracket does not enclose the smallest eigenvalue");
    for (int iter = 0; iter < 2200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count_with_floor(s, mid, pivmin) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

Spectrum eigenvalues_tridiagonal(const SymTridiagonal& s) {
    check_shape(s);
    if (!all_finite(s)) throw NumericError("tridiagonal matrix has non-finite entries");
    const int n = static_cast<int>(s.diag.size());
    std::vector<double> d = s.diag;
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy(s.offdiag.begin(), s.offdiag.end(), e.begin());
    constexpr int kMaxSweeps = 60;
    const double eps = std::numeric_limits<double>::epsilon();

    auto at = [](std::vector<double>& v, int i) -> double& { return v[static_cast<std::size_t>(i)]; };

    for (int l = 0; l < n; ++l) {
        int sweeps = 0;
        int mm;
        do {
            for (mm = l; mm < n - 1; ++mm) {
                const double dd = std::abs(at(d, mm)) + std::abs(at(d, mm + 1));
                if (std::abs(at(e, mm)) <= eps * dd) break;
            }
            if (mm == l) break;
            if (sweeps++ == kMaxSweeps)
                throw NumericError("implicit QL failed to converge for eigenvalue " + std::to_string(l));
            // Wilkinson-style shift from the leading 2x2 block.
            double g = (at(d, l + 1) - at(d, l)) / (2.0 * at(e, l));
            double r = std::hypot(g, 1.0);
            g = at(d, mm) - at(d, l) + at(e, l) / (g + std::copysign(r, g));
            double sn = 1.0, cs = 1.0, p = 0.0;
            int i = mm - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                const double f = sn * at(e, i);
                const double b = cs * at(e, i);
                r = std::hypot(f, g);
                at(e, i + 1) = r;
                if (r == 0.0) {
                    at(d, i + 1) -= p;
                    at(e, mm) = 0.0;
                    underflow = true;
                    break;
                }
                sn = f / r;
                cs = g / r;
                g = at(d, i + 1) - p;
                r = (at(d, i) - g) * sn + 2.0 * cs * b;
                p = sn * r;
                at(d, i + 1) = g + p;
                g = cs * r - b;
            }
            if (underflow) continue;
            at(d, l) -= p;
            at(e, l) = g;
            at(e, mm) = 0.0;
        } while (mm != l);
    }
    return Spectrum(std::move(d));
}

Spectrum eigenvalues_hermitian(const DenseMatrix& q) {
    if (q.rows() != q.cols() || q.rows() == 0) throw ParameterError("Hermitian eigensolver needs a non-empty square matrix");
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if (!q.allFinite()) throw NumericError("matrix has non-finite entries");
    if ((q - q.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ParameterError("matrix is not Hermitian to tolerance 1e-10");
    const Eigen::Index n = q.rows();
    SymTridiagonal t;
    if (n == 1) {
        t.diag = {q(0, 0).real()};
        return eigenvalues_tridiagonal(t);
    }
    const DenseMatrix symmetrized = 0.5 * (q + q.adjoint());
    Eigen::Tridiagonalization<DenseMatrix> reduction(symmetrized);
    const Eigen::VectorXd diag = reduction.diagonal();
    const Eigen::VectorXd sub = reduction.subDiagonal();
    t.diag.assign(diag.data(), diag.data() + diag.size());
    t.offdiag.assign(sub.data(), sub.data() + sub.size());
    return eigenvalues_tridiagonal(t);
}

double trace_inverse_power(const Spectrum& spectrum, int c) {
    if (c < 1) throw ParameterError("inverse power c must be a positive integer");
    double total = 0.0;
    for (double lambda : spectrum.eigenvalues()) {
        if (!(lambda > 0.0))
            throw DomainError("nonpositive eigenvalue " + std::to_string(lambda) + " in inverse trace");
        total += std::pow(lambda, -c);
    }
    return total;
}

double log_normalization(const LaguerreParams& params) {
    const double m = params.m();
    const double n = params.n();
    const double beta = params.beta();
    double log_z = -0.5 * m * n * beta * std::log(2.0);
    for (int j = 1; j <= params.n(); ++j) {
        log_z += std::lgamma(1.0 + 0.5 * beta) - std::lgamma(1.0 + 0.5 * beta * j) -
                 std::lgamma(0.5 * beta * (m - n + j));
    }
    return log_z;
}

double log_joint_density(const LaguerreParams& params, const Spectrum& spectrum) {
    if (static_cast<int>(spectrum.size()) != params.n())
        throw ParameterError("spectrum size does not match n");
    const auto& lambda = spectrum.eigenvalues();
    for (double v : lambda)
        if (!(v > 0.0)) throw DomainError("joint density needs positive eigenvalues");
    const double alpha = params.alpha();
    double out = std::lgamma(params.n() + 1.0) + log_normalization(params);
    for (double v : lambda) out += (alpha - 1.0) * std::log(v) - 0.5 * v;
    for (std::size_t j = 1; j < lambda.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const double gap = lambda[j] - lambda[k];
            if (gap <= 0.0) return -std::numeric_limits<double>::infinity();
            out += params.beta() * std::log(gap);
        }
    }
    return out;
}

} // namespace rmlab
