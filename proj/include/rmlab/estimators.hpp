#pragma once

// Gap probabilities near zero, gap-exponent fits, Monte Carlo inverse
// moments with divergence diagnostics, tail-index estimation, and the
// finiteness verdicts they are checked against.
//
// Every Monte Carlo routine draws trial i from rng.substream(i) and reduces
// per-trial results in index order, so output is bit-identical for a given
// stream key regardless of ExecutionOptions::threads.

#include "rmlab/combinatorics.hpp"
#include "rmlab/ensembles.hpp"
#include "rmlab/rational.hpp"
#include "rmlab/spectra.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rmlab {

struct ExecutionOptions {
    int threads = 1;
};

/// Either a (m,n,beta)-Laguerre ensemble or a compound Wishart spec.
using Ensemble = std::variant<LaguerreParams, CompoundSpec>;

inline constexpr char kFlagMassConcentration[] = "mass_concentration";
inline constexpr char kFlagRunningMeanUnstable[] = "running_mean_unstable";
inline constexpr char kFlagTailIndexAtOrBelowC[] = "tail_index_at_or_below_c";

/// The largest single summand is flagged when it exceeds this many
/// 1/sqrt(trials) of the total: finite-variance summands stay near
/// 1/sqrt(trials), summands with tail index <= 1 near 1/log(trials).
inline constexpr double kConcentrationScale = 5.0;
/// Relative drift allowed between the final mean and any running mean
/// taken after the first tenth of the trials.
inline constexpr double kRunningMeanTolerance = 0.1;

/// c < (m - n + 1) beta / 2, exactly.
bool finiteness_verdict(const LaguerreParams& params, int c);
/// Same threshold; independent of xi.
bool compound_finiteness_verdict(const CompoundSpec& spec, int c);
double ensemble_alpha(const Ensemble& ensemble);

struct WilsonInterval {
    double low;
    double high;
};

/// 95% Wilson score interval for `hits` successes out of `trials`.
WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials);

struct GapEstimate {
    double a = 0.0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::int64_t hits = 0;
};

/// Fraction of draws whose smallest eigenvalue lies below a. Requires
/// a > 0 and trials >= 100.
GapEstimate gap_probability(const Ensemble& ensemble, double a, std::int64_t trials,
                            const RandomStream& rng, ExecutionOptions options = {});

/// Gap probabilities at every grid point from the same `trials` draws.
std::vector<GapEstimate> gap_probabilities(const Ensemble& ensemble, std::span<const double> a_grid,
                                           std::int64_t trials, const RandomStream& rng,
                                           ExecutionOptions options = {});

/// {1e-1, 10^-1.5, 1e-2, 10^-2.5}
std::vector<double> default_gap_grid();

struct ExponentFit {
    double alpha_hat = 0.0;
    double intercept = 0.0; // estimate of log C
    double std_error = 0.0; // of alpha_hat
    std::vector<std::pair<double, double>> points; // (log a, log p_hat)
    std::vector<GapEstimate> gaps;
};

/// Unweighted least-squares fit of log p_hat on log a. The grid must hold
/// at least 3 strictly decreasing points in (0, 0.5]; a grid point with no
/// hits raises InsufficientTrials.
ExponentFit fit_gap_exponent(const Ensemble& ensemble, std::span<const double> a_grid,
                             std::int64_t trials, const RandomStream& rng,
                             ExecutionOptions options = {});

struct Checkpoint {
    std::int64_t trials = 0;
    double mean = 0.0;
};

struct MomentEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::vector<Checkpoint> checkpoints;
    double max_share = 0.0; // largest summand / total
    bool mass_concentration = false;
    bool running_mean_unstable = false;

    bool stable() const { return !mass_concentration && !running_mean_unstable; }
    std::vector<std::string> flags() const;
};

/// Mean, standard error and stability diagnostics of positive summands.
/// Checkpoints are taken at 1000 * 10^{k/2} trials and at the end.
MomentEstimate summarize_summands(std::span<const double> values);

/// Monte Carlo E[Tr(S^{-c})]; needs trials >= 1000. Divergent regimes are
/// returned with flags set, never as errors.
MomentEstimate mc_inverse_moment(const Ensemble& ensemble, int c, std::int64_t trials,
                                 const RandomStream& rng, ExecutionOptions options = {});

/// Monte Carlo E[prod_i Tr(S^{-pi_i})] for a cycle type pi.
MomentEstimate mc_inverse_trace_product(const Ensemble& ensemble, const Partition& pi_type,
                                        std::int64_t trials, const RandomStream& rng,
                                        ExecutionOptions options = {});

/// ceil(n^0.6) clamped to [10, n/2].
std::size_t default_hill_k(std::size_t sample_count);

/// Hill estimator k / sum_{i<=k} log(x_(i) / x_(k+1)) over the descending
/// order statistics. Requires 10 <= k <= n/2 (ParameterError) and a
/// nonzero denominator (DomainError).
double hill_tail_index(std::span<const double> samples, std::size_t k);

/// E[Z^c] through c * int t^{c-1} P(Z > t) dt on the empirical law of the
/// samples, i.e. sum_j (z_(j)^c - z_(j-1)^c) (n - j + 1) / n.
double moment_via_tail_integral(std::span<const double> samples, double c);

struct HillEstimate {
    std::size_t k = 0;
    double index = 0.0;
};

struct MomentReport {
    explicit MomentReport(Ensemble e) : ensemble(std::move(e)) {}

    Ensemble ensemble;
    int c = 0;
    double alpha = 0.0;
    bool analytic_finite = false;
    MomentEstimate mc;
    HillEstimate hill;
    std::optional<Rational> exact; // Laguerre-scale exact value when beta = 2
    std::vector<std::string> flags;
    std::vector<std::string> notes;
};

/// Analytic verdict, Monte Carlo estimate with diagnostics, Hill index of
/// 1/lambda_1 (1/mu_1 for compound specs), and for beta = 2 Laguerre
/// ensembles with c < m - n + 1 the exact Weingarten value scaled by 2^{-c}.
MomentReport full_report(const Ensemble& ensemble, int c, std::int64_t trials, const RandomStream& rng,
                         ExecutionOptions options = {}, std::optional<std::size_t> hill_k = std::nullopt);

} // namespace rmlab
