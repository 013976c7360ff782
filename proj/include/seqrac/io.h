#ifndef SEQRAC_IO_H
#define SEQRAC_IO_H

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqrac/certification.h"
#include "seqrac/incompatibility.h"
#include "seqrac/protocol.h"
#include "seqrac/tomography.h"

namespace seqrac::io {

using json = nlohmann::json;

/// Round to 9 significant digits. Non-finite values pass through.
double quantize(double v);

/// %.9g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);
/// Inverse of format_number. Throws std::invalid_argument on junk.
double parse_number(const std::string &text);

/// Splits one CSV line on commas; no quoting.
std::vector<std::string> split_csv_line(const std::string &line);

/// Header x0,x1,y,z,b,c,count preceded by "# events_per_setting=N".
void write_counts_csv(std::ostream &out, const CountTable &table);
/// Lines starting with '#' other than the events_per_setting comment are ignored.
CountTable read_counts_csv(std::istream &in);

/// {"events_per_setting": N, "counts": {"x0,x1,y,z,b,c": n, ...}}
json counts_to_json(const CountTable &table);
CountTable counts_from_json(const json &j);

/// {"p": {"x0,x1,y,z,b,c": p, ...}}
json distribution_to_json(const JointDistribution &dist);
JointDistribution distribution_from_json(const json &j);

/// {w_ab, w_ac, sigma_ab, sigma_ac, eta_min, eta_max, sigma_min, sigma_max, consistent}.
/// An infinite sigma_max is written as null.
json certification_to_json(const CertificationResult &r);
CertificationResult certification_from_json(const json &j);

/// {d_bob, d_charlie, eta_argmin, capped, assumptions}
json incompatibility_to_json(const IncompatibilityResult &r);
IncompatibilityResult incompatibility_from_json(const json &j);

/// Columns eta_lab,epsilon,f_min,eta_est,eta_error.
void write_tomography_csv(std::ostream &out, std::span<const SharpnessErrorPoint> rows);
std::vector<SharpnessErrorPoint> read_tomography_csv(std::istream &in);

json bloch_to_json(const BlochVector &v);
/// {f_min, eta_est, eta_error, average_fidelity, n_est, lab_bloch: [[x,y,z] x4]}
json worst_case_to_json(const WorstCaseResult &r);

}  // namespace seqrac::io

#endif
