#include "rmlab/serialize.hpp"

#include "rmlab/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace rmlab {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw IoError("cannot format floating-point value");
    return std::string(buf, end);
}

Json to_json(const LaguerreParams& params) {
    return {{"m", params.m()}, {"n", params.n()}, {"beta", params.beta()}, {"alpha", params.alpha()}};
}

Json to_json(const CompoundSpec& spec) {
    return {{"m", spec.m()},
            {"n", spec.n()},
            {"beta", spec.beta()},
            {"alpha", spec.laguerre().alpha()},
            {"xi", spec.xi()}};
}

Json to_json(const Ensemble& ensemble) {
    return std::visit([](const auto& e) { return to_json(e); }, ensemble);
}

Json to_json(const SymTridiagonal& s) { return {{"diag", s.diag}, {"offdiag", s.offdiag}}; }

SymTridiagonal tridiagonal_from_json(const Json& j) {
    try {
        SymTridiagonal s{j.at("diag").get<std::vector<double>>(), j.at("offdiag").get<std::vector<double>>()};
        if (s.diag.empty() || s.offdiag.size() + 1 != s.diag.size())
            throw ParameterError("tridiagonal JSON needs n diagonal and n - 1 off-diagonal entries");
        return s;
    } catch (const Json::exception& e) {
        throw ParameterError(std::string("malformed tridiagonal JSON: ") + e.what());
    }
}

Json to_json(const DenseMatrix& q, Flavor flavor) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            re_row.push_back(q(i, j).real());
            im_row.push_back(q(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    Json out = {{"re", std::move(re)}};
    if (flavor == Flavor::complex) out["im"] = std::move(im);
    return out;
}

Json to_json(const Spectrum& spectrum) { return spectrum.eigenvalues(); }

Json to_json(const GapEstimate& gap) {
    return {{"a", gap.a},           {"p_hat", gap.p_hat},   {"ci_low", gap.ci_low},
            {"ci_high", gap.ci_high}, {"trials", gap.trials}, {"hits", gap.hits}};
}

Json to_json(const ExponentFit& fit) {
    Json points = Json::array();
    for (const auto& [x, y] : fit.points) points.push_back({x, y});
    Json gaps = Json::array();
    for (const auto& gap : fit.gaps) gaps.push_back(to_json(gap));
    return {{"alpha_hat", fit.alpha_hat},
            {"intercept", fit.intercept},
            {"stderr", fit.std_error},
            {"points", std::move(points)},
            {"gaps", std::move(gaps)}};
}

Json to_json(const MomentEstimate& estimate) {
    Json checkpoints = Json::array();
    for (const auto& cp : estimate.checkpoints) checkpoints.push_back({{"trials", cp.trials}, {"mean", cp.mean}});
    return {{"estimate", estimate.estimate},
            {"stderr", estimate.std_error},
            {"checkpoints", std::move(checkpoints)},
            {"max_share", estimate.max_share},
            {"flags", estimate.flags()},
            {"stable", estimate.stable()}};
}

Json to_json(const MomentReport& report) {
    return {{"params", to_json(report.ensemble)},
            {"c", report.c},
            {"alpha", report.alpha},
            {"analytic_finite", report.analytic_finite},
            {"mc", to_json(report.mc)},
            {"hill", {{"k", report.hill.k}, {"index", report.hill.index}}},
            {"exact", report.exact ? Json(report.exact->to_string()) : Json(nullptr)},
            {"flags", report.flags},
            {"notes", report.notes}};
}

Json density_record(const LaguerreParams& params, const Spectrum& spectrum, double log_density) {
    return {{"params", to_json(params)},
            {"eigenvalues", spectrum.eigenvalues()},
            {"log_density", std::isfinite(log_density) ? Json(log_density) : Json(nullptr)}};
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& q, Flavor flavor) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            if (j) out << ',';
            out << format_double(q(i, j).real());
            if (flavor == Flavor::complex) {
                const double im = q(i, j).imag();
                out << (std::signbit(im) ? "" : "+") << format_double(im) << 'i';
            }
        }
        out << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& q) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            if (j) out << ',';
            out << format_double(q(i, j));
        }
        out << '\n';
    }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    const auto& values = spectrum.eigenvalues();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << format_double(values[i]);
    }
    out << '\n';
}

void write_gap_csv(std::ostream& out, std::span<const GapEstimate> gaps) {
    out << "a,p_hat,ci_low,ci_high\n";
    for (const auto& gap : gaps) {
        out << format_double(gap.a) << ',' << format_double(gap.p_hat) << ',' << format_double(gap.ci_low) << ','
            << format_double(gap.ci_high) << '\n';
    }
}

} // namespace rmlab
