// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "rmlab/cli.hpp"
#include "rmlab/combinatorics.hpp"
#include "rmlab/estimators.hpp"
#include "rmlab/weingarten.hpp"
#include "stat_oracles.hpp"
#include "weingarten_oracle.hpp"

#include "json.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace rmlab;
using Json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

ExecutionOptions threads() {
    return {static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))};
}

const RandomStream kRoot(kDefaultSeed);

// 1. Exact threshold on 12 configurations, beta written as p/q.
Outcome threshold_grid() {
    struct Case {
        int m, n, p, q, c;
    };
    const Case cases[] = {
        {10, 3, 2, 1, 7}, {10, 3, 2, 1, 8}, // c = alpha = 8
        {4, 3, 2, 1, 1},  {4, 3, 2, 1, 2},  // c = alpha = 2
        {4, 3, 1, 1, 1},                    // c = alpha = 1
        {6, 4, 1, 1, 1},  {6, 4, 1, 1, 2},  // alpha = 3/2
        {7, 3, 1, 1, 2},  {7, 3, 1, 1, 3},  // alpha = 5/2
        {5, 3, 1, 2, 1},                    // alpha = 3/4
        {8, 2, 4, 1, 13}, {5, 5, 5, 2, 1},  // alpha = 14, alpha = 5/4
    };
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    int agree = 0;
    for (const auto& k : cases) {
        const bool expected = static_cast<long>(2) * k.c * k.q < static_cast<long>(k.m - k.n + 1) * k.p;
        const bool got = finiteness_verdict(LaguerreParams(k.m, k.n, static_cast<double>(k.p) / k.q), k.c);
        if (got == expected) ++agree;
        else out.require(false, "mismatch at (" + std::to_string(k.m) + "," + std::to_string(k.n) + ")");
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.require(ms < 1.0, fmt("took %.3f ms", ms));
    out.note(std::to_string(agree) + "/12 verdicts exact" + fmt(", %.3f ms", ms));
    return out;
}

// 2. n = 1: E[S^{-c}] = 2^{-c} Gamma(alpha - c) / Gamma(alpha), alpha = m beta / 2.
Outcome n1_closed_form() {
    struct Case {
        int m;
        double beta;
        int c;
    };
    Outcome out;
    for (const auto& k : {Case{4, 2.0, 1}, Case{3, 1.0, 1}}) {
        const double alpha = 0.5 * k.m * k.beta;
        const double truth = std::pow(2.0, -k.c) * std::tgamma(alpha - k.c) / std::tgamma(alpha);
        const auto est = mc_inverse_moment(LaguerreParams(k.m, 1, k.beta), k.c, 100000, kRoot.substream(2), threads());
        const double z = (est.estimate - truth) / est.std_error;
        out.require(std::abs(z) <= 3.0, fmt("m=%g beta=%g off by %.2f se", k.m, k.beta, z));
        out.note(fmt("(%g,%g): ", k.m, k.beta) + fmt("%.5f vs %.5f, z=%.2f", est.estimate, truth, z));
    }
    return out;
}

// 3. Weingarten values through the CLI against the hand-typed character tables.
Outcome weingarten_exact() {
    Outcome out;
    int compared = 0;
    for (const std::string z : {"5", "-7", "1/2", "-7/3", "11/5", "9"}) {
        for (int q = 1; q <= 3; ++q) {
            std::ostringstream sout, serr;
            const int code = cli::run({"wg-table", "--q", std::to_string(q), "--z", z}, sout, serr);
            if (code != 0) {
                out.require(false, "wg-table exit " + std::to_string(code));
                continue;
            }
            const Json doc = Json::parse(sout.str());
            for (const auto& row : doc["values"]) {
                const Partition cls(row["class"].get<std::vector<int>>());
                const Rational expected = testing_oracles::weingarten_by_table(cls, Rational::parse(z));
                if (Rational::parse(row["value"].get<std::string>()) != expected)
                    out.require(false, "Wg" + cls.to_string() + " at z=" + z);
                ++compared;
            }
        }
    }
    int moments = 0;
    for (int m = 2; m <= 8; ++m)
        for (int n = 1; n < m; ++n, ++moments)
            if (exact_inverse_moment({Partition{1}}, m, n) != Rational(BigInt(n), BigInt(m - n)))
                out.require(false, "c=1 moment at m=" + std::to_string(m) + " n=" + std::to_string(n));
    out.note(std::to_string(compared) + " Weingarten values, " + std::to_string(moments) + " first moments");
    return out;
}

// 4. Exact Weingarten moments (scaled by 2^{-c}) against Monte Carlo.
Outcome cross_route() {
    Outcome out;
    for (int c : {1, 2}) {
        const Rational wishart = exact_inverse_moment({Partition{c}}, 6, 2);
        const double exact = wishart.to_double() / std::pow(2.0, c);
        const auto est = mc_inverse_moment(LaguerreParams(6, 2, 2), c, 100000, kRoot.substream(4), threads());
        const double z = (est.estimate - exact) / est.std_error;
        out.require(std::abs(z) <= 3.0, fmt("c=%g off by %.2f se", c, z));
        out.note(fmt("c=%g: %.6f vs ", c, est.estimate) + wishart.to_string() + fmt("/2^c=%.6f, z=%.2f", exact, z));
    }
    return out;
}

// 5. Gap exponent fits and the n = 1 intercept.
Outcome gap_scaling() {
    Outcome out;
    const auto grid_61 = default_gap_grid();
    const auto fit_61 = fit_gap_exponent(LaguerreParams(6, 4, 1), grid_61, 1000000, kRoot.substream(51), threads());
    out.require(std::abs(fit_61.alpha_hat - 1.5) <= 0.15, fmt("(6,4,1) alpha_hat %.3f", fit_61.alpha_hat));
    out.note(fmt("(6,4,1) alpha_hat=%.3f", fit_61.alpha_hat));

    // a^3 tails leave the default grid with no hits; shift it right.
    const std::vector<double> grid_52{0.3, 0.2, 0.1, 0.05};
    const auto fit_52 = fit_gap_exponent(LaguerreParams(5, 3, 2), grid_52, 1000000, kRoot.substream(52), threads());
    out.require(std::abs(fit_52.alpha_hat - 3.0) <= 0.3, fmt("(5,3,2) alpha_hat %.3f", fit_52.alpha_hat));
    out.note(fmt("(5,3,2) alpha_hat=%.3f", fit_52.alpha_hat));

    const std::vector<double> grid_41{0.2, 0.1, 0.05, 0.025};
    const auto fit_41 = fit_gap_exponent(LaguerreParams(4, 1, 1), grid_41, 1000000, kRoot.substream(53), threads());
    const double target = std::log(std::pow(2.0, -2.0) / std::tgamma(3.0));
    out.require(std::abs(fit_41.intercept - target) <= 0.15 * std::abs(target),
                fmt("(4,1,1) intercept %.3f vs %.3f", fit_41.intercept, target));
    out.note(fmt("(4,1,1) intercept=%.3f vs %.3f", fit_41.intercept, target));
    return out;
}

// 6. (4,3,2): c = 1 stable, c = 2 concentrated with Hill index near alpha = 2.
Outcome divergence_detection() {
    Outcome out;
    const Ensemble e = LaguerreParams(4, 3, 2);
    const auto finite = full_report(e, 1, 100000, kRoot.substream(6), threads());
    out.require(finite.mc.stable(), "c=1 flagged");
    const auto infinite = full_report(e, 2, 100000, kRoot.substream(6), threads());
    out.require(infinite.mc.mass_concentration, "c=2 not mass-concentrated");
    out.require(infinite.hill.index >= 1.7 && infinite.hill.index <= 2.3,
                fmt("Hill index %.3f", infinite.hill.index));
    out.note(fmt("c=1 max_share=%.4f, c=2 max_share=%.4f, ", finite.mc.max_share, infinite.mc.max_share) +
             fmt("Hill=%.3f (k=%g)", infinite.hill.index, static_cast<double>(infinite.hill.k)));
    return out;
}

// 7. Compound sandwich on coupled draws and the Hill index of 1/mu_1.
Outcome compound_sandwich() {
    Outcome out;
    const CompoundSpec spec(5, 2, 2, {1, 2, 2, 3, 5});
    const std::int64_t coupled = 10000;
    std::int64_t violations = 0;
    const RandomStream pairs = kRoot.substream(71);
    for (std::int64_t i = 0; i < coupled; ++i) {
        RandomStream rng = pairs.substream(static_cast<std::uint64_t>(i));
        const auto draw = sample_coupled_compound(spec, rng);
        const double lambda1 = eigenvalues_hermitian(draw.wishart).smallest();
        const double mu1 = eigenvalues_hermitian(draw.compound).smallest();
        if (!(spec.xi_min() * lambda1 <= mu1 && mu1 <= spec.xi_max() * lambda1)) ++violations;
    }
    out.require(violations == 0, std::to_string(violations) + " sandwich violations");

    // The Hill estimate of a^4 tails converges slowly; use 10^6 draws.
    const std::int64_t hill_draws = 1000000;
    std::vector<double> inverse(static_cast<std::size_t>(hill_draws));
    const RandomStream tails = kRoot.substream(72);
    for (std::int64_t i = 0; i < hill_draws; ++i) {
        RandomStream rng = tails.substream(static_cast<std::uint64_t>(i));
        inverse[static_cast<std::size_t>(i)] = 1.0 / eigenvalues_hermitian(sample_compound_wishart(spec, rng)).smallest();
    }
    const std::size_t k = default_hill_k(inverse.size());
    const double index = hill_tail_index(inverse, k);
    const double alpha = spec.laguerre().alpha();
    out.require(std::abs(index - alpha) <= 0.15 * alpha, fmt("Hill index %.3f vs alpha %.1f", index, alpha));
    out.note(std::to_string(violations) + "/" + std::to_string(coupled) + " violations, " +
             fmt("Hill=%.3f (k=%g) vs alpha=%.1f", index, static_cast<double>(k), alpha));
    return out;
}

// 8. Kernel accuracy.
Outcome kernels() {
    Outcome out;
    double worst_gram = 0.0;
    double worst_bisection = 0.0;
    const RandomStream root = kRoot.substream(8);
    const LaguerreParams params[] = {{5, 3, 2.5}, {4, 3, 1}, {10, 8, 2}, {6, 6, 0.5}, {12, 4, 1.5}};
    for (std::uint64_t i = 0; i < 1000; ++i) {
        RandomStream rng = root.substream(i);
        const Bidiagonal x = sample_bidiagonal(params[i % 5], rng);
        const Eigen::MatrixXd dense = x.to_dense().transpose() * x.to_dense();
        const SymTridiagonal s = gram(x);
        worst_gram = std::max(worst_gram, (s.to_dense() - dense).cwiseAbs().maxCoeff() / dense.cwiseAbs().maxCoeff());
        worst_bisection =
            std::max(worst_bisection, std::abs(smallest_eigenvalue(s, 1e-12) - eigenvalues_tridiagonal(s).smallest()));
    }
    out.require(worst_gram <= 1e-12, fmt("Gram error %.3g", worst_gram));
    out.require(worst_bisection <= 1e-10, fmt("bisection error %.3g", worst_bisection));

    const LaguerreParams p(3, 2, 1);
    boost::math::quadrature::exp_sinh<double> outer, inner;
    const double mass = outer.integrate(
        [&](double l1) {
            if (!(l1 > 0.0)) return 0.0;
            return inner.integrate(
                [&](double t) { return t > 0.0 ? std::exp(log_joint_density(p, Spectrum({l1, l1 + t}))) : 0.0; },
                1e-12);
        },
        1e-11);
    out.require(std::abs(mass - 1.0) <= 1e-5, fmt("n=2 density mass %.8f", mass));

    bool orthogonal = true;
    for (int q = 1; q <= 6; ++q) {
        const auto shapes = partitions(q);
        for (const auto& a : shapes)
            for (const auto& b : shapes) {
                std::int64_t sum = 0;
                for (const auto& mu : shapes)
                    sum += static_cast<std::int64_t>(conjugacy_class_size(mu)) * character(a, mu) * character(b, mu);
                orthogonal = orthogonal && sum == (a == b ? static_cast<std::int64_t>(factorial(q)) : 0);
            }
    }
    out.require(orthogonal, "character orthogonality");
    out.note(fmt("Gram %.2g, bisection %.2g, ", worst_gram, worst_bisection) + fmt("density mass-1 = %.2g", mass - 1.0));
    return out;
}

// 9. Byte-identical CLI output across runs and thread counts.
Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"verdict", "--m", "6", "--n", "4", "--beta", "1", "--c", "1"},
        {"moment-exact", "--m", "6", "--n", "2", "--cycle-type", "2,1"},
        {"wg-table", "--q", "4", "--z", "-7/2"},
        {"gap", "--m", "6", "--n", "4", "--beta", "1", "--trials", "20000"},
        {"gap", "--m", "5", "--n", "2", "--beta", "2", "--xi", "1,2,2,3,5", "--trials", "5000", "--format", "json"},
        {"exponent", "--m", "6", "--n", "4", "--beta", "1", "--trials", "20000"},
        {"moment-mc", "--m", "4", "--n", "3", "--beta", "2", "--c", "2", "--trials", "20000"},
        {"report", "--m", "5", "--n", "2", "--beta", "2", "--xi", "1,2,2,3,5", "--c", "1", "--trials", "5000"},
        {"sample", "--m", "5", "--n", "3", "--beta", "2.5", "--count", "5"},
        {"sample", "--m", "5", "--n", "2", "--beta", "2", "--xi", "1,2,2,3,5", "--form", "dense", "--format", "csv"},
        {"density", "--m", "6", "--n", "3", "--beta", "1.5", "--eigenvalues", "0.5,2,7"},
    };
    Outcome out;
    for (auto cmd : commands) {
        cmd.insert(cmd.end(), {"--seed", "424242"});
        std::string outputs[3];
        int codes[3];
        for (int run = 0; run < 3; ++run) {
            auto args = cmd;
            args.insert(args.end(), {"--threads", run == 2 ? "4" : "1"});
            std::ostringstream sout, serr;
            codes[run] = cli::run(args, sout, serr);
            outputs[run] = sout.str();
        }
        const bool same = codes[0] == 0 && codes[1] == 0 && codes[2] == 0 && outputs[0] == outputs[1] &&
                          outputs[0] == outputs[2] && !outputs[0].empty();
        out.require(same, cmd[0] + " differs");
    }
    out.note(std::to_string(commands.size()) + " invocations x {run twice, threads 1 and 4}");
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double budget_seconds;
    };
    const Criterion criteria[] = {
        {1, "threshold correctness", threshold_grid, 1.0},
        {2, "n=1 closed-form oracle", n1_closed_form, 10.0},
        {3, "Weingarten exactness", weingarten_exact, 1.0},
        {4, "cross-route consistency", cross_route, 30.0},
        {5, "gap scaling", gap_scaling, 300.0},
        {6, "divergence detection", divergence_detection, 60.0},
        {7, "compound sandwich", compound_sandwich, 60.0},
        {8, "numerical kernels", kernels, 120.0},
        {9, "determinism", determinism, 600.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.note(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) outcome.require(false, fmt("over budget (%.1f s > %.0f s)", seconds, c.budget_seconds));
        if (!outcome.pass) ++failures;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str(), seconds);
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
