#include "rmlab/cli.hpp"

#include "rmlab/errors.hpp"
#include "rmlab/estimators.hpp"
#include "rmlab/serialize.hpp"
#include "rmlab/weingarten.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rmlab::cli {

namespace {

// Flags shared by the subcommands. `threads` and `output` are execution
// settings and stay out of the serialized config so they cannot change
// the bytes of a result.
struct Options {
    int m = 0;
    int n = 0;
    std::string beta_text = "2";
    std::vector<double> xi;
    int c = 1;
    std::int64_t trials = 100000;
    std::optional<std::uint64_t> seed;
    std::vector<double> a_grid = default_gap_grid();
    std::string output;
    std::string format;
    int threads = 1;
    std::string cycle_type;
    int q = 1;
    std::string z;
    std::int64_t count = 1;
    std::string form = "tridiagonal";
    bool spectra = false;
    std::vector<double> eigenvalues;
    std::optional<std::size_t> hill_k;
};

double parse_beta(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParameterError("beta must be a decimal number (got '" + text + "')");
    return value;
}

std::uint64_t resolve_seed(const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
        std::uint64_t value = 0;
        const std::string text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ParameterError(std::string(kSeedEnv) + " must be an unsigned 64-bit integer");
        return value;
    }
    return kDefaultSeed;
}

Ensemble make_ensemble(const Options& opt) {
    const double beta = parse_beta(opt.beta_text);
    if (opt.xi.empty()) return LaguerreParams(opt.m, opt.n, beta);
    if (beta != 1.0 && beta != 2.0)
        throw ParameterError("compound Wishart is defined for beta in {1, 2} only (got " + opt.beta_text + ")");
    return CompoundSpec(opt.m, opt.n, static_cast<int>(beta), opt.xi);
}

Json ensemble_config(const Options& opt) {
    Json j = {{"m", opt.m}, {"n", opt.n}, {"beta", parse_beta(opt.beta_text)}};
    if (!opt.xi.empty()) j["xi"] = opt.xi;
    return j;
}

void add_ensemble_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--m", opt.m, "rows of X (m >= n)")->required();
    cmd->add_option("--n", opt.n, "matrix size n")->required();
    cmd->add_option("--beta", opt.beta_text, "Dyson index beta > 0")->capture_default_str();
    cmd->add_option("--xi", opt.xi, "compound weights xi_1..xi_m (comma separated); beta must be 1 or 2")
        ->delimiter(',');
}

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "master seed (default: $" + std::string(kSeedEnv) + " or " +
                                            std::to_string(kDefaultSeed) + ")");
    cmd->add_option("--threads", opt.threads, "worker threads; never changes results")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    cmd->add_option("--output,-o", opt.output, "write the result to this file instead of stdout");
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }
    void finish() {
        stream().flush();
        if (!stream()) throw IoError("failed writing output");
    }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_json(const Options& opt, std::ostream& out, const Json& doc) {
    Sink sink(opt.output, out);
    sink.stream() << doc.dump(2) << '\n';
    sink.finish();
}

std::string resolved_format(const Options& opt, const std::string& fallback) {
    const std::string fmt = opt.format.empty() ? fallback : opt.format;
    if (fmt != "json" && fmt != "csv") throw ParameterError("--format must be json or csv");
    return fmt;
}

Json base_config(const std::string& command, std::uint64_t seed) {
    return {{"command", command}, {"seed", seed}};
}

void cmd_verdict(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    Json config = base_config("verdict", seed);
    config.update(ensemble_config(opt));
    config["c"] = opt.c;
    bool finite = false;
    if (const auto* params = std::get_if<LaguerreParams>(&ensemble))
        finite = finiteness_verdict(*params, opt.c);
    else
        finite = compound_finiteness_verdict(std::get<CompoundSpec>(ensemble), opt.c);
    emit_json(opt, out, {{"config", config}, {"finite", finite}, {"alpha", ensemble_alpha(ensemble)}, {"c", opt.c}});
}

void cmd_moment_exact(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    if (opt.cycle_type.empty()) throw ParameterError("--cycle-type is required");
    const Partition pi = Partition::parse(opt.cycle_type);
    Json config = base_config("moment-exact", seed);
    config.update({{"m", opt.m}, {"n", opt.n}, {"cycle_type", pi.parts()}});
    const Rational value = exact_inverse_moment(MomentOrder{pi}, opt.m, opt.n);
    const Rational laguerre = value / Rational(BigInt(1) << pi.size(), BigInt(1));
    emit_json(opt, out,
              {{"config", config},
               {"c", pi.size()},
               {"value", value.to_string()},
               {"laguerre_value", laguerre.to_string()}});
}

void cmd_wg_table(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    if (opt.z.empty()) throw ParameterError("--z is required");
    const Rational z = Rational::parse(opt.z);
    Json config = base_config("wg-table", seed);
    config.update({{"q", opt.q}, {"z", z.to_string()}});
    Json rows = Json::array();
    for (const auto& cls : partitions(opt.q)) {
        rows.push_back({{"class", cls.parts()},
                        {"class_size", conjugacy_class_size(cls)},
                        {"value", weingarten(cls, z).value.to_string()}});
    }
    emit_json(opt, out, {{"config", config}, {"q", opt.q}, {"z", z.to_string()}, {"values", rows}});
}

void cmd_gap(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    const std::string fmt = resolved_format(opt, "csv");
    Json config = base_config("gap", seed);
    config.update(ensemble_config(opt));
    config.update({{"trials", opt.trials}, {"a_grid", opt.a_grid}, {"format", fmt}});
    const auto gaps = gap_probabilities(ensemble, opt.a_grid, opt.trials, RandomStream(seed), {opt.threads});
    if (fmt == "json") {
        Json rows = Json::array();
        for (const auto& g : gaps) rows.push_back(to_json(g));
        emit_json(opt, out, {{"config", config}, {"gaps", rows}});
        return;
    }
    Sink sink(opt.output, out);
    sink.stream() << "# config: " << config.dump() << '\n';
    write_gap_csv(sink.stream(), gaps);
    sink.finish();
}

void cmd_exponent(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    Json config = base_config("exponent", seed);
    config.update(ensemble_config(opt));
    config.update({{"trials", opt.trials}, {"a_grid", opt.a_grid}});
    const auto fit = fit_gap_exponent(ensemble, opt.a_grid, opt.trials, RandomStream(seed), {opt.threads});
    Json doc = to_json(fit);
    doc["config"] = config;
    doc["alpha"] = ensemble_alpha(ensemble);
    emit_json(opt, out, doc);
}

void cmd_moment_mc(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    const Partition pi = opt.cycle_type.empty() ? Partition{opt.c} : Partition::parse(opt.cycle_type);
    Json config = base_config("moment-mc", seed);
    config.update(ensemble_config(opt));
    config.update({{"cycle_type", pi.parts()}, {"trials", opt.trials}});
    const auto est = mc_inverse_trace_product(ensemble, pi, opt.trials, RandomStream(seed), {opt.threads});
    Json doc = to_json(est);
    doc["config"] = config;
    doc["c"] = pi.size();
    emit_json(opt, out, doc);
}

void cmd_report(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    Json config = base_config("report", seed);
    config.update(ensemble_config(opt));
    config.update({{"c", opt.c}, {"trials", opt.trials}});
    if (opt.hill_k) config["hill_k"] = *opt.hill_k;
    const auto report = full_report(ensemble, opt.c, opt.trials, RandomStream(seed), {opt.threads}, opt.hill_k);
    Json doc = to_json(report);
    doc["config"] = config;
    emit_json(opt, out, doc);
}

void cmd_sample(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const Ensemble ensemble = make_ensemble(opt);
    const std::string fmt = resolved_format(opt, "json");
    if (opt.count < 1) throw ParameterError("--count must be positive");
    if (opt.form != "tridiagonal" && opt.form != "dense") throw ParameterError("--form must be tridiagonal or dense");
    const bool compound = std::holds_alternative<CompoundSpec>(ensemble);
    if (compound && opt.form == "tridiagonal" && !opt.spectra)
        throw ParameterError("compound Wishart draws are dense; use --form dense");

    Json config = base_config("sample", seed);
    config.update(ensemble_config(opt));
    config.update({{"count", opt.count}, {"form", opt.form}, {"spectra", opt.spectra}, {"format", fmt}});

    const RandomStream master(seed);
    Json draws = Json::array();
    Sink sink(opt.output, out);
    if (fmt == "csv") sink.stream() << "# config: " << config.dump() << '\n';

    for (std::int64_t i = 0; i < opt.count; ++i) {
        RandomStream stream = master.substream(static_cast<std::uint64_t>(i));
        if (!compound) {
            const SymTridiagonal s = sample_laguerre(std::get<LaguerreParams>(ensemble), stream);
            if (opt.spectra) {
                const Spectrum spec = eigenvalues_tridiagonal(s);
                if (fmt == "csv") write_spectrum_csv(sink.stream(), spec);
                else draws.push_back(to_json(spec));
            } else if (opt.form == "tridiagonal") {
                if (fmt == "csv") {
                    if (i) sink.stream() << '\n';
                    write_matrix_csv(sink.stream(), s.to_dense());
                } else {
                    draws.push_back(to_json(s));
                }
            } else {
                if (fmt == "csv") {
                    if (i) sink.stream() << '\n';
                    write_matrix_csv(sink.stream(), s.to_dense());
                } else {
                    draws.push_back(to_json(DenseMatrix(s.to_dense().cast<std::complex<double>>()), Flavor::real));
                }
            }
        } else {
            const auto& spec = std::get<CompoundSpec>(ensemble);
            const DenseMatrix q = sample_compound_wishart(spec, stream);
            if (opt.spectra) {
                const Spectrum values = eigenvalues_hermitian(q);
                if (fmt == "csv") write_spectrum_csv(sink.stream(), values);
                else draws.push_back(to_json(values));
            } else if (fmt == "csv") {
                if (i) sink.stream() << '\n';
                write_matrix_csv(sink.stream(), q, spec.flavor());
            } else {
                draws.push_back(to_json(q, spec.flavor()));
            }
        }
    }
    if (fmt == "json") sink.stream() << Json{{"config", config}, {"draws", draws}}.dump(2) << '\n';
    sink.finish();
}

void cmd_density(const Options& opt, std::ostream& out) {
    const std::uint64_t seed = resolve_seed(opt);
    const LaguerreParams params(opt.m, opt.n, parse_beta(opt.beta_text));
    if (opt.eigenvalues.empty()) throw ParameterError("--eigenvalues is required");
    const Spectrum spectrum(opt.eigenvalues);
    Json config = base_config("density", seed);
    config.update(ensemble_config(opt));
    config["eigenvalues"] = opt.eigenvalues;
    Json doc = density_record(params, spectrum, log_joint_density(params, spectrum));
    doc["config"] = config;
    emit_json(opt, out, doc);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random-matrix laboratory for inverse moments of Laguerre and compound Wishart matrices", "rmlab"};
    app.require_subcommand(1);
    Options opt;

    auto* verdict = app.add_subcommand("verdict", "finiteness of E[Tr(S^-c)] from the threshold c < (m-n+1)beta/2");
    add_ensemble_options(verdict, opt);
    verdict->add_option("--c", opt.c, "moment order")->required();
    add_common_options(verdict, opt);

    auto* exact = app.add_subcommand("moment-exact", "exact E[Tr_pi(P^-1)] for complex Wishart P via Weingarten calculus");
    exact->add_option("--m", opt.m)->required();
    exact->add_option("--n", opt.n)->required();
    exact->add_option("--cycle-type", opt.cycle_type, "cycle type of pi, e.g. 2,1")->required();
    add_common_options(exact, opt);

    auto* table = app.add_subcommand("wg-table", "Weingarten values for every class of S_q at z");
    table->add_option("--q", opt.q)->required();
    table->add_option("--z", opt.z, "integer or num/den")->required();
    add_common_options(table, opt);

    auto* gap = app.add_subcommand("gap", "gap probabilities P(lambda_1 < a) over a grid");
    add_ensemble_options(gap, opt);
    gap->add_option("--a-grid", opt.a_grid, "thresholds a (comma separated)")->delimiter(',');
    gap->add_option("--trials", opt.trials)->capture_default_str();
    gap->add_option("--format", opt.format, "csv (default) or json");
    add_common_options(gap, opt);

    auto* exponent = app.add_subcommand("exponent", "least-squares fit of the gap exponent alpha");
    add_ensemble_options(exponent, opt);
    exponent->add_option("--a-grid", opt.a_grid, "decreasing thresholds in (0, 0.5]")->delimiter(',');
    exponent->add_option("--trials", opt.trials)->capture_default_str();
    add_common_options(exponent, opt);

    auto* moment_mc = app.add_subcommand("moment-mc", "Monte Carlo inverse moment with divergence diagnostics");
    add_ensemble_options(moment_mc, opt);
    moment_mc->add_option("--c", opt.c, "moment order (E[Tr S^-c])");
    moment_mc->add_option("--cycle-type", opt.cycle_type, "estimate E[prod Tr(S^-pi_i)] instead");
    moment_mc->add_option("--trials", opt.trials)->capture_default_str();
    add_common_options(moment_mc, opt);

    auto* report = app.add_subcommand("report", "verdict, Monte Carlo, Hill index and exact value in one record");
    add_ensemble_options(report, opt);
    report->add_option("--c", opt.c)->required();
    report->add_option("--trials", opt.trials)->capture_default_str();
    report->add_option("--hill-k", opt.hill_k, "order statistics used by the Hill estimator");
    add_common_options(report, opt);

    auto* sample = app.add_subcommand("sample", "emit seeded draws");
    add_ensemble_options(sample, opt);
    sample->add_option("--count", opt.count)->capture_default_str();
    sample->add_option("--form", opt.form, "tridiagonal or dense")->capture_default_str();
    sample->add_flag("--spectra", opt.spectra, "emit eigenvalues instead of matrices");
    sample->add_option("--format", opt.format, "json (default) or csv");
    add_common_options(sample, opt);

    auto* density = app.add_subcommand("density", "log joint eigenvalue density of the ordered eigenvalues");
    density->add_option("--m", opt.m)->required();
    density->add_option("--n", opt.n)->required();
    density->add_option("--beta", opt.beta_text)->capture_default_str();
    density->add_option("--eigenvalues", opt.eigenvalues)->delimiter(',')->required();
    add_common_options(density, opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (verdict->parsed()) cmd_verdict(opt, out);
        else if (exact->parsed()) cmd_moment_exact(opt, out);
        else if (table->parsed()) cmd_wg_table(opt, out);
        else if (gap->parsed()) cmd_gap(opt, out);
        else if (exponent->parsed()) cmd_exponent(opt, out);
        else if (moment_mc->parsed()) cmd_moment_mc(opt, out);
        else if (report->parsed()) cmd_report(opt, out);
        else if (sample->parsed()) cmd_sample(opt, out);
        else if (density->parsed()) cmd_density(opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}

} // namespace rmlab::cli
