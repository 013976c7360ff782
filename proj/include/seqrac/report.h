#ifndef SEQRAC_REPORT_H
#define SEQRAC_REPORT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqrac/io.h"

namespace seqrac {

enum class Mode { sweep, simulate, certify, incompat, tomo, projective_bound };
enum class Format { csv, json };

const char *mode_name(Mode m);
Mode parse_mode(const std::string &name);
Format parse_format(const std::string &name);

struct RunConfig {
    Mode mode = Mode::sweep;
    std::optional<double> eta;
    std::optional<double> theta_degrees;
    /// Sweep grid in degrees; empty means the twelve default angles.
    std::vector<double> thetas;
    double visibility = 1.0;
    /// 0 selects exact probabilities.
    std::uint64_t events_per_setting = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.01;
    /// Witness inputs for certify / incompat.
    double w_ab = 0.5;
    double w_ac = 0.5;
    double sigma_ab = 0.0;
    double sigma_ac = 0.0;
    /// Empty writes to stdout.
    std::string output_path;
    Format format = Format::csv;

    /// Throws std::invalid_argument on out-of-range fields or when both eta
    /// and theta are set.
    void validate() const;
    /// eta, else eta_from_waveplate(theta), else nullopt.
    std::optional<double> target_eta() const;
};

/// Keys: mode, eta, theta, thetas, visibility, events_per_setting, seed,
/// epsilon, w_ab, w_ac, sigma_ab, sigma_ac, output, format. Missing keys keep
/// the value from base; unknown keys throw.
RunConfig config_from_json(const io::json &j, RunConfig base = {});

std::vector<double> default_theta_grid();

struct ReportRow {
    double theta = 0.0;
    double eta_target = 0.0;
    double w_ab = 0.0;
    double w_ac = 0.0;
    double sigma_ab = 0.0;
    double sigma_ac = 0.0;
    double eta_min = 0.0;
    double eta_max = 0.0;
    double interval_width = 0.0;
    double d_bob = 0.0;
    double d_charlie = 0.0;
    bool consistent = true;

    bool operator==(const ReportRow &) const = default;
};

/// Every field rounded to 9 significant digits, as serialized.
ReportRow quantized(const ReportRow &row);

/// Witnesses, certified interval and incompatibility bounds from one pair.
struct CertifyReport {
    CertificationResult certification;
    IncompatibilityResult incompatibility;
    std::vector<std::string> warnings;
};

CertifyReport run_certify(const WitnessPair &w);

/// One row per angle. Exact mode (events_per_setting == 0) evaluates the
/// optimal strategy's probabilities at the configured visibility; otherwise
/// row k samples counts with seed + k * 0x9E3779B97F4A7C15. A single eta or
/// theta in the config replaces the grid.
std::vector<ReportRow> run_sweep(const RunConfig &config);

/// Warnings for rows whose interval is inconsistent.
std::vector<std::string> sweep_warnings(std::span<const ReportRow> rows);

void write_rows_csv(std::ostream &out, std::span<const ReportRow> rows);
std::vector<ReportRow> read_rows_csv(std::istream &in);
io::json rows_to_json(std::span<const ReportRow> rows);
std::vector<ReportRow> rows_from_json(const io::json &j);

io::json certify_report_to_json(const CertifyReport &r);

struct BoundaryRow {
    double w_ab;
    double optimal;
    double projective;
    /// 3/4 while w_ab <= 3/4, absent beyond.
    std::optional<double> classical;
};

/// points >= 2 equally spaced W_AB values on [1/2, (2 + sqrt2)/4].
std::vector<BoundaryRow> boundary_table(int points);
/// Columns w_ab,optimal,projective,classical; classical is empty when absent.
void write_boundary_csv(std::ostream &out, std::span<const BoundaryRow> rows);

}  // namespace seqrac

#endif
