#pragma once

// JSON and CSV encodings. The key names and CSV columns here are a
// stability contract, listed in the README.

#include "rmlab/estimators.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace rmlab {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

Json to_json(const LaguerreParams& params);
Json to_json(const CompoundSpec& spec);
Json to_json(const Ensemble& ensemble);

/// {"diag": [...], "offdiag": [...]}
Json to_json(const SymTridiagonal& s);
SymTridiagonal tridiagonal_from_json(const Json& j);

/// {"re": [[...]], "im": [[...]]}; "im" omitted for the real flavor.
Json to_json(const DenseMatrix& q, Flavor flavor);

Json to_json(const Spectrum& spectrum);
Json to_json(const GapEstimate& gap);
Json to_json(const ExponentFit& fit);
/// {"estimate", "stderr", "checkpoints": [{"trials", "mean"}], "max_share", "flags", "stable"}
Json to_json(const MomentEstimate& estimate);
/// {params, c, alpha, analytic_finite, mc, hill: {k, index}, exact: "num/den"|null, flags, notes}
Json to_json(const MomentReport& report);

/// {"params", "eigenvalues", "log_density"}; log_density is null for -inf.
Json density_record(const LaguerreParams& params, const Spectrum& spectrum, double log_density);

/// One matrix as CSV rows. Complex entries are written "re+imi".
void write_matrix_csv(std::ostream& out, const DenseMatrix& q, Flavor flavor);
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& q);
/// Eigenvalues as a single CSV row.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
/// Header "a,p_hat,ci_low,ci_high" then one row per grid point.
void write_gap_csv(std::ostream& out, std::span<const GapEstimate> gaps);

} // namespace rmlab
