#include "seqrac/report.h"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

#include "seqrac/projective_bound.h"
#include "seqrac/strategies.h"

namespace seqrac {

namespace {

const char *kRowsHeader =
    "theta,eta_target,w_ab,w_ac,sigma_ab,sigma_ac,eta_min,eta_max,interval_width,d_bob,d_charlie,consistent";

double theta_for_eta(double eta) {
    return std::acos(eta) * 180.0 / std::numbers::pi / 4.0;
}

ReportRow make_row(double theta, double eta, const WitnessPair &w) {
    CertifyReport r = run_certify(w);
    const SharpnessInterval &I = r.certification.interval;
    ReportRow row;
    row.theta = theta;
    row.eta_target = eta;
    row.w_ab = w.w_ab;
    row.w_ac = w.w_ac;
    row.sigma_ab = w.sigma_ab;
    row.sigma_ac = w.sigma_ac;
    row.eta_min = I.eta_min;
    row.eta_max = I.eta_max;
    row.interval_width = std::abs(I.width()) <= tol::kEtaSnap ? 0.0 : I.width();
    row.d_bob = r.incompatibility.d_bob;
    row.d_charlie = r.incompatibility.d_charlie;
    row.consistent = I.consistent;
    return row;
}

}  // namespace

const char *mode_name(Mode m) {
    switch (m) {
        case Mode::sweep: return "sweep";
        case Mode::simulate: return "simulate";
        case Mode::certify: return "certify";
        case Mode::incompat: return "incompat";
        case Mode::tomo: return "tomo";
        case Mode::projective_bound: return "projective-bound";
    }
    return "?";
}

Mode parse_mode(const std::string &name) {
    for (Mode m : {Mode::sweep, Mode::simulate, Mode::certify, Mode::incompat, Mode::tomo, Mode::projective_bound}) {
        if (name == mode_name(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown mode '" + name + "'");
}

Format parse_format(const std::string &name) {
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "json") {
        return Format::json;
    }
    throw std::invalid_argument("format must be csv or json, got '" + name + "'");
}

void RunConfig::validate() const {
    if (eta && theta_degrees) {
        throw std::invalid_argument("give either eta or theta, not both");
    }
    if (eta && !(*eta >= 0.0 && *eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
    auto check_theta = [](double t) {
        if (!(t >= 0.0 && t <= 22.5)) {
            throw std::invalid_argument("theta must lie in [0, 22.5] degrees");
        }
    };
    if (theta_degrees) {
        check_theta(*theta_degrees);
    }
    for (double t : thetas) {
        check_theta(t);
    }
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
    for (double w : {w_ab, w_ac}) {
        if (!(w >= 0.0 && w <= 1.0)) {
            throw std::invalid_argument("witness values must lie in [0, 1]");
        }
    }
    if (!(sigma_ab >= 0.0 && sigma_ac >= 0.0)) {
        throw std::invalid_argument("witness errors must be non-negative");
    }
}

std::optional<double> RunConfig::target_eta() const {
    if (eta) {
        return eta;
    }
    if (theta_degrees) {
        return eta_from_waveplate(*theta_degrees);
    }
    return std::nullopt;
}

RunConfig config_from_json(const io::json &j, RunConfig base) {
    static const std::set<std::string> known{"mode",     "eta",      "theta",    "thetas",  "visibility",
                                             "events_per_setting", "seed", "epsilon", "w_ab", "w_ac",
                                             "sigma_ab", "sigma_ac", "output",   "format"};
    if (!j.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw std::invalid_argument("unknown config key '" + it.key() + "'");
        }
    }
    RunConfig c = std::move(base);
    if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("eta")) c.eta = j["eta"].get<double>();
    if (j.contains("theta")) c.theta_degrees = j["theta"].get<double>();
    if (j.contains("thetas")) c.thetas = j["thetas"].get<std::vector<double>>();
    if (j.contains("visibility")) c.visibility = j["visibility"].get<double>();
    if (j.contains("events_per_setting")) c.events_per_setting = j["events_per_setting"].get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("w_ab")) c.w_ab = j["w_ab"].get<double>();
    if (j.contains("w_ac")) c.w_ac = j["w_ac"].get<double>();
    if (j.contains("sigma_ab")) c.sigma_ab = j["sigma_ab"].get<double>();
    if (j.contains("sigma_ac")) c.sigma_ac = j["sigma_ac"].get<double>();
    if (j.contains("output")) c.output_path = j["output"].get<std::string>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    return c;
}

std::vector<double> default_theta_grid() {
    return {0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22.5};
}

ReportRow quantized(const ReportRow &row) {
    ReportRow q = row;
    for (double *f : {&q.theta, &q.eta_target, &q.w_ab, &q.w_ac, &q.sigma_ab, &q.sigma_ac, &q.eta_min, &q.eta_max,
                      &q.interval_width, &q.d_bob, &q.d_charlie}) {
        *f = io::quantize(*f);
    }
    return q;
}

CertifyReport run_certify(const WitnessPair &w) {
    CertifyReport r;
    r.certification.witnesses = w;
    r.certification.interval = certify_sharpness(w);
    r.incompatibility = bound_b2(w, r.certification.interval);
    const SharpnessInterval &I = r.certification.interval;
    if (!I.consistent) {
        r.warnings.push_back("inconsistent_interval: eta_min exceeds eta_max; bounds use the sorted interval");
    }
    if (I.radicand_clamped) {
        r.warnings.push_back("radicand_clamped: W_AC lies outside [1/2, (2 + sqrt2)/4]");
    }
    if (r.incompatibility.capped) {
        r.warnings.push_back("incompatibility_capped: a raw bound exceeded 2(sqrt2 - 1)");
    }
    return r;
}

std::vector<ReportRow> run_sweep(const RunConfig &config) {
    config.validate();
    std::vector<std::pair<double, double>> targets;
    if (config.eta) {
        targets.emplace_back(theta_for_eta(*config.eta), *config.eta);
    } else if (config.theta_degrees) {
        targets.emplace_back(*config.theta_degrees, eta_from_waveplate(*config.theta_degrees));
    } else {
        for (double t : config.thetas.empty() ? default_theta_grid() : config.thetas) {
            targets.emplace_back(t, eta_from_waveplate(t));
        }
    }
    std::vector<ReportRow> rows;
    rows.reserve(targets.size());
    for (size_t k = 0; k < targets.size(); k++) {
        auto [theta, eta] = targets[k];
        ProtocolSpec spec = ProtocolSpec::optimal(eta, config.visibility);
        WitnessPair w;
        if (config.events_per_setting == 0) {
            w = compute_witnesses(exact_distribution(spec));
        } else {
            std::uint64_t seed = config.seed + static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL;
            w = compute_witnesses(sample_counts(spec, config.events_per_setting, seed));
        }
        rows.push_back(make_row(theta, eta, w));
    }
    return rows;
}

std::vector<std::string> sweep_warnings(std::span<const ReportRow> rows) {
    std::vector<std::string> out;
    for (const ReportRow &r : rows) {
        if (!r.consistent) {
            out.push_back("inconsistent_interval at theta=" + io::format_number(r.theta));
        }
    }
    return out;
}

void write_rows_csv(std::ostream &out, std::span<const ReportRow> rows) {
    out << kRowsHeader << '\n';
    for (const ReportRow &r : rows) {
        for (double v : {r.theta, r.eta_target, r.w_ab, r.w_ac, r.sigma_ab, r.sigma_ac, r.eta_min, r.eta_max,
                         r.interval_width, r.d_bob, r.d_charlie}) {
            out << io::format_number(v) << ',';
        }
        out << (r.consistent ? "true" : "false") << '\n';
    }
}

std::vector<ReportRow> read_rows_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || io::split_csv_line(line) != io::split_csv_line(kRowsHeader)) {
        throw std::invalid_argument(std::string("report header must be ") + kRowsHeader);
    }
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        auto f = io::split_csv_line(line);
        if (f.empty() || (f.size() == 1 && f[0].empty())) {
            continue;
        }
        if (f.size() != 12 || (f[11] != "true" && f[11] != "false")) {
            throw std::invalid_argument("malformed report row: " + line);
        }
        ReportRow r;
        double *fields[] = {&r.theta,   &r.eta_target, &r.w_ab,    &r.w_ac,           &r.sigma_ab, &r.sigma_ac,
                            &r.eta_min, &r.eta_max,    &r.interval_width, &r.d_bob, &r.d_charlie};
        for (size_t i = 0; i < 11; i++) {
            *fields[i] = io::parse_number(f[i]);
        }
        r.consistent = f[11] == "true";
        rows.push_back(r);
    }
    return rows;
}

io::json rows_to_json(std::span<const ReportRow> rows) {
    io::json out = io::json::array();
    for (const ReportRow &r : rows) {
        ReportRow q = quantized(r);
        out.push_back({{"theta", q.theta},
                       {"eta_target", q.eta_target},
                       {"w_ab", q.w_ab},
                       {"w_ac", q.w_ac},
                       {"sigma_ab", q.sigma_ab},
                       {"sigma_ac", q.sigma_ac},
                       {"eta_min", q.eta_min},
                       {"eta_max", q.eta_max},
                       {"interval_width", q.interval_width},
                       {"d_bob", q.d_bob},
                       {"d_charlie", q.d_charlie},
                       {"consistent", q.consistent}});
    }
    return out;
}

std::vector<ReportRow> rows_from_json(const io::json &j) {
    std::vector<ReportRow> rows;
    for (const io::json &o : j) {
        ReportRow r;
        r.theta = o.at("theta").get<double>();
        r.eta_target = o.at("eta_target").get<double>();
        r.w_ab = o.at("w_ab").get<double>();
        r.w_ac = o.at("w_ac").get<double>();
        r.sigma_ab = o.at("sigma_ab").get<double>();
        r.sigma_ac = o.at("sigma_ac").get<double>();
        r.eta_min = o.at("eta_min").get<double>();
        r.eta_max = o.at("eta_max").get<double>();
        r.interval_width = o.at("interval_width").get<double>();
        r.d_bob = o.at("d_bob").get<double>();
        r.d_charlie = o.at("d_charlie").get<double>();
        r.consistent = o.at("consistent").get<bool>();
        rows.push_back(r);
    }
    return rows;
}

io::json certify_report_to_json(const CertifyReport &r) {
    io::json out = io::certification_to_json(r.certification);
    out["incompatibility"] = io::incompatibility_to_json(r.incompatibility);
    out["warnings"] = r.warnings;
    return out;
}

std::vector<BoundaryRow> boundary_table(int points) {
    if (points < 2) {
        throw std::invalid_argument("boundary table needs at least two points");
    }
    const double lo = 0.5;
    const double hi = (2.0 + std::numbers::sqrt2) / 4.0;
    std::vector<BoundaryRow> rows;
    rows.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; i++) {
        double w = i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1);
        BoundaryRow row{w, optimal_tradeoff(w), projective_bound(w), std::nullopt};
        if (w <= 0.75) {
            row.classical = 0.75;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_boundary_csv(std::ostream &out, std::span<const BoundaryRow> rows) {
    out << "w_ab,optimal,projective,classical\n";
    for (const BoundaryRow &r : rows) {
        out << io::format_number(r.w_ab) << ',' << io::format_number(r.optimal) << ','
            << io::format_number(r.projective) << ',' << (r.classical ? io::format_number(*r.classical) : "") << '\n';
    }
}

}  // namespace seqrac
