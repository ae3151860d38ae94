#include "rmlab/estimators.hpp"

#include "rmlab/errors.hpp"
#include "rmlab/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>

namespace rmlab {

namespace {

constexpr double kWilsonZ = 1.959963984540054; // 97.5% normal quantile

// Runs body(i) for i in [0, count) over contiguous chunks. Results must be
// written to per-index slots; nothing here depends on scheduling.
template <typename Body>
void for_each_trial(std::int64_t count, int threads, Body&& body) {
    const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1)));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = count * w / workers;
        const std::int64_t end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                for (std::int64_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

Spectrum draw_spectrum(const Ensemble& ensemble, RandomStream& rng) {
    if (const auto* params = std::get_if<LaguerreParams>(&ensemble))
        return eigenvalues_tridiagonal(sample_laguerre(*params, rng));
    return eigenvalues_hermitian(sample_compound_wishart(std::get<CompoundSpec>(ensemble), rng));
}

void check_trials(std::int64_t trials, std::int64_t minimum, const char* what) {
    if (trials < minimum)
        throw ParameterError(std::string(what) + " needs at least " + std::to_string(minimum) + " trials (got " +
                             std::to_string(trials) + ")");
}

// Per-trial Monte Carlo record used by the moment estimators.
struct MomentTrial {
    double summand = 0.0;
    double inverse_smallest = 0.0;
};

std::vector<MomentTrial> run_moment_trials(const Ensemble& ensemble, const Partition& pi_type,
                                           std::int64_t trials, const RandomStream& rng,
                                           ExecutionOptions options) {
    check_trials(trials, 1000, "Monte Carlo inverse moment");
    std::vector<MomentTrial> out(static_cast<std::size_t>(trials));
    for_each_trial(trials, options.threads, [&](std::int64_t i) {
        RandomStream stream = rng.substream(static_cast<std::uint64_t>(i));
        const Spectrum spectrum = draw_spectrum(ensemble, stream);
        double product = 1.0;
        for (int part : pi_type.parts()) product *= trace_inverse_power(spectrum, part);
        out[static_cast<std::size_t>(i)] = {product, 1.0 / spectrum.smallest()};
    });
    return out;
}

} // namespace

bool finiteness_verdict(const LaguerreParams& params, int c) {
    if (c < 1) throw ParameterError("moment order c must be a positive integer");
    // 2c < (m - n + 1) beta avoids any rounding in the halving.
    return 2.0 * c < (params.m() - params.n() + 1) * params.beta();
}

bool compound_finiteness_verdict(const CompoundSpec& spec, int c) {
    return finiteness_verdict(spec.laguerre(), c);
}

double ensemble_alpha(const Ensemble& ensemble) {
    if (const auto* params = std::get_if<LaguerreParams>(&ensemble)) return params->alpha();
    return std::get<CompoundSpec>(ensemble).laguerre().alpha();
}

WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials) {
    if (trials <= 0 || hits < 0 || hits > trials) throw ParameterError("invalid hit count for Wilson interval");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

std::vector<double> default_gap_grid() {
    return {1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5)};
}

std::vector<GapEstimate> gap_probabilities(const Ensemble& ensemble, std::span<const double> a_grid,
                                           std::int64_t trials, const RandomStream& rng,
                                           ExecutionOptions options) {
    check_trials(trials, 100, "gap probability");
    if (a_grid.empty()) throw ParameterError("empty gap grid");
    for (double a : a_grid)
        if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("gap thresholds must be positive and finite");

    const std::size_t points = a_grid.size();
    // below[i * points + g] == 1 iff draw i has an eigenvalue under a_grid[g]
    std::vector<unsigned char> below(static_cast<std::size_t>(trials) * points, 0);
    for_each_trial(trials, options.threads, [&](std::int64_t i) {
        RandomStream stream = rng.substream(static_cast<std::uint64_t>(i));
        unsigned char* row = below.data() + static_cast<std::size_t>(i) * points;
        if (const auto* params = std::get_if<LaguerreParams>(&ensemble)) {
            const SymTridiagonal s = sample_laguerre(*params, stream);
            for (std::size_t g = 0; g < points; ++g) row[g] = sturm_count(s, a_grid[g]) >= 1;
        } else {
            const double mu1 =
                eigenvalues_hermitian(sample_compound_wishart(std::get<CompoundSpec>(ensemble), stream)).smallest();
            for (std::size_t g = 0; g < points; ++g) row[g] = mu1 < a_grid[g];
        }
    });

    std::vector<GapEstimate> out;
    out.reserve(points);
    for (std::size_t g = 0; g < points; ++g) {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < trials; ++i) hits += below[static_cast<std::size_t>(i) * points + g];
        const auto ci = wilson_interval(hits, trials);
        out.push_back({a_grid[g], static_cast<double>(hits) / static_cast<double>(trials), ci.low, ci.high,
                       trials, hits});
    }
    return out;
}

GapEstimate gap_probability(const Ensemble& ensemble, double a, std::int64_t trials, const RandomStream& rng,
                            ExecutionOptions options) {
    const double grid[] = {a};
    return gap_probabilities(ensemble, grid, trials, rng, options).front();
}

ExponentFit fit_gap_exponent(const Ensemble& ensemble, std::span<const double> a_grid, std::int64_t trials,
                             const RandomStream& rng, ExecutionOptions options) {
    if (a_grid.size() < 3) throw ParameterError("exponent fit needs at least 3 grid points");
    for (std::size_t g = 0; g < a_grid.size(); ++g) {
        if (!(a_grid[g] > 0.0) || a_grid[g] > 0.5) throw ParameterError("exponent fit grid must lie in (0, 0.5]");
        if (g > 0 && !(a_grid[g] < a_grid[g - 1])) throw ParameterError("exponent fit grid must be strictly decreasing");
    }
    ExponentFit fit;
    fit.gaps = gap_probabilities(ensemble, a_grid, trials, rng, options);
    for (const auto& gap : fit.gaps) {
        if (gap.hits == 0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6g", gap.a);
            throw InsufficientTrials("no draw fell below a = " + std::string(buf) + " in " +
                                     std::to_string(trials) + " trials");
        }
        fit.points.emplace_back(std::log(gap.a), std::log(gap.p_hat));
    }

    const double count = static_cast<double>(fit.points.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : fit.points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : fit.points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    fit.alpha_hat = sxy / sxx;
    fit.intercept = mean_y - fit.alpha_hat * mean_x;
    double rss = 0.0;
    for (const auto& [x, y] : fit.points) {
        const double r = y - (fit.intercept + fit.alpha_hat * x);
        rss += r * r;
    }
    fit.std_error = std::sqrt(rss / (count - 2.0) / sxx);
    return fit;
}

std::vector<std::string> MomentEstimate::flags() const {
    std::vector<std::string> out;
    if (mass_concentration) out.emplace_back(kFlagMassConcentration);
    if (running_mean_unstable) out.emplace_back(kFlagRunningMeanUnstable);
    return out;
}

MomentEstimate summarize_summands(std::span<const double> values) {
    if (values.empty()) throw ParameterError("no Monte Carlo summands");
    const auto n = static_cast<std::int64_t>(values.size());

    MomentEstimate est;
    std::vector<std::int64_t> marks;
    for (int k = 0;; ++k) {
        const auto mark = static_cast<std::int64_t>(std::llround(1000.0 * std::pow(10.0, 0.5 * k)));
        if (mark >= n) break;
        marks.push_back(mark);
    }
    marks.push_back(n);

    double sum = 0.0;
    double largest = 0.0;
    std::size_t next_mark = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = values[static_cast<std::size_t>(i)];
        sum += v;
        largest = std::max(largest, v);
        if (i + 1 == marks[next_mark]) {
            est.checkpoints.push_back({i + 1, sum / static_cast<double>(i + 1)});
            ++next_mark;
        }
    }
    est.estimate = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - est.estimate) * (v - est.estimate);
    est.std_error = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    est.max_share = sum > 0.0 ? largest / sum : 0.0;
    est.mass_concentration = est.max_share > kConcentrationScale / std::sqrt(static_cast<double>(n));
    for (const auto& cp : est.checkpoints) {
        if (10 * cp.trials < n) continue;
        if (std::abs(cp.mean - est.estimate) > kRunningMeanTolerance * std::abs(est.estimate))
            est.running_mean_unstable = true;
    }
    return est;
}

MomentEstimate mc_inverse_trace_product(const Ensemble& ensemble, const Partition& pi_type, std::int64_t trials,
                                        const RandomStream& rng, ExecutionOptions options) {
    if (pi_type.size() < 1) throw ParameterError("empty cycle type");
    const auto draws = run_moment_trials(ensemble, pi_type, trials, rng, options);
    std::vector<double> summands(draws.size());
    std::transform(draws.begin(), draws.end(), summands.begin(), [](const MomentTrial& t) { return t.summand; });
    return summarize_summands(summands);
}

MomentEstimate mc_inverse_moment(const Ensemble& ensemble, int c, std::int64_t trials, const RandomStream& rng,
                                 ExecutionOptions options) {
    if (c < 1) throw ParameterError("moment order c must be a positive integer");
    return mc_inverse_trace_product(ensemble, Partition{c}, trials, rng, options);
}

std::size_t default_hill_k(std::size_t sample_count) {
    const auto k = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(sample_count), 0.6)));
    return std::clamp<std::size_t>(k, 10, std::max<std::size_t>(10, sample_count / 2));
}

double hill_tail_index(std::span<const double> samples, std::size_t k) {
    if (samples.size() < k + 1)
        throw ParameterError("Hill estimator needs more than k = " + std::to_string(k) + " samples");
    if (k < 10 || k > samples.size() / 2)
        throw ParameterError("Hill estimator needs 10 <= k <= n/2 (k = " + std::to_string(k) +
                             ", n = " + std::to_string(samples.size()) + ")");
    std::vector<double> sorted(samples.begin(), samples.end());
    for (double x : sorted)
        if (!(x > 0.0)) throw ParameterError("Hill estimator needs positive samples");
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end(), std::greater<>());
    const double threshold = sorted[k];
    std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += std::log(sorted[i] / threshold);
    if (!(sum > 0.0)) throw DomainError("Hill estimator is undefined: the top order statistics are all equal");
    return static_cast<double>(k) / sum;
}

double moment_via_tail_integral(std::span<const double> samples, double c) {
    if (samples.empty()) throw ParameterError("layer-cake moment needs samples");
    if (!(c > 0.0)) throw ParameterError("layer-cake moment needs c > 0");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() > 0.0)) throw ParameterError("layer-cake moment needs positive samples");
    // Between consecutive order statistics the empirical survival function
    // is constant, so each slab integrates c t^{c-1} exactly.
    const double n = static_cast<double>(sorted.size());
    double previous_power = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        const double power = std::pow(sorted[j], c);
        const double survival = static_cast<double>(sorted.size() - j) / n;
        total += (power - previous_power) * survival;
        previous_power = power;
    }
    return total;
}

MomentReport full_report(const Ensemble& ensemble, int c, std::int64_t trials, const RandomStream& rng,
                         ExecutionOptions options, std::optional<std::size_t> hill_k) {
    if (c < 1) throw ParameterError("moment order c must be a positive integer");
    MomentReport report(ensemble);
    report.c = c;
    report.alpha = ensemble_alpha(ensemble);
    if (const auto* params = std::get_if<LaguerreParams>(&ensemble))
        report.analytic_finite = finiteness_verdict(*params, c);
    else
        report.analytic_finite = compound_finiteness_verdict(std::get<CompoundSpec>(ensemble), c);

    const auto draws = run_moment_trials(ensemble, Partition{c}, trials, rng, options);
    std::vector<double> summands(draws.size());
    std::vector<double> inverse_smallest(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        summands[i] = draws[i].summand;
        inverse_smallest[i] = draws[i].inverse_smallest;
    }
    report.mc = summarize_summands(summands);
    report.hill.k = hill_k.value_or(default_hill_k(inverse_smallest.size()));
    report.hill.index = hill_tail_index(inverse_smallest, report.hill.k);

    report.flags = report.mc.flags();
    if (report.hill.index <= c) report.flags.emplace_back(kFlagTailIndexAtOrBelowC);

    if (const auto* params = std::get_if<LaguerreParams>(&ensemble)) {
        if (params->beta() == 2.0 && c < params->m() - params->n() + 1 && c <= kMaxExactMomentOrder) {
            const Rational wishart = exact_inverse_moment(MomentOrder{Partition{c}}, params->m(), params->n());
            report.exact = wishart / Rational(BigInt(1) << c, BigInt(1));
            report.notes.emplace_back("exact value is the complex Wishart moment scaled by 2^-" + std::to_string(c) +
                                      " to the (m,n,2)-Laguerre convention");
        }
    } else {
        report.notes.emplace_back("statistics refer to the smallest eigenvalue mu_1 of Q = X*DX");
    }
    return report;
}

} // namespace rmlab
