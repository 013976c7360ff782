#include "seqrac/io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace seqrac::io {

namespace {

const char *kCountsHeader = "x0,x1,y,z,b,c,count";
const char *kTomographyHeader = "eta_lab,epsilon,f_min,eta_est,eta_error";

std::string cell_key(int prep, int y, int z, int b, int c) {
    std::ostringstream s;
    s << prep / 2 << ',' << prep % 2 << ',' << y << ',' << z << ',' << b << ',' << c;
    return s.str();
}

int parse_bit(const std::string &text) {
    if (text == "0") {
        return 0;
    }
    if (text == "1") {
        return 1;
    }
    throw std::invalid_argument("expected a bit, got '" + text + "'");
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) {
        s.pop_back();
    }
    size_t start = s.find_first_not_of(' ');
    return start == std::string::npos ? std::string() : s.substr(start);
}

json number(double v) {
    return std::isfinite(v) ? json(quantize(v)) : json(nullptr);
}

double number_or_inf(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

double quantize(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double parse_number(const std::string &text) {
    std::string t = trimmed(text);
    if (t == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (t == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    if (t == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    char *end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream s(trimmed(line));
    while (std::getline(s, field, ',')) {
        fields.push_back(trimmed(field));
    }
    if (!line.empty() && trimmed(line).back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

void write_counts_csv(std::ostream &out, const CountTable &table) {
    out << "# events_per_setting=" << table.events_per_setting << '\n' << kCountsHeader << '\n';
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        out << cell_key(prep, y, z, b, c) << ',' << table(prep, y, z, b, c) << '\n';
                    }
                }
            }
        }
    }
}

CountTable read_counts_csv(std::istream &in) {
    CountTable table;
    std::array<bool, kCells> seen{};
    std::string line;
    bool header = false;
    const std::string events_tag = "# events_per_setting=";
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind(events_tag, 0) == 0) {
                table.events_per_setting = std::stoull(line.substr(events_tag.size()));
            }
            continue;
        }
        if (!header) {
            if (line != kCountsHeader) {
                throw std::invalid_argument("count table header must be " + std::string(kCountsHeader));
            }
            header = true;
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 7) {
            throw std::invalid_argument("count table row needs 7 fields: " + line);
        }
        int prep = prep_index(parse_bit(f[0]), parse_bit(f[1]));
        int idx = cell_index(prep, parse_bit(f[2]), parse_bit(f[3]), parse_bit(f[4]), parse_bit(f[5]));
        if (f[6].empty() || f[6].find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("counts must be non-negative integers: " + line);
        }
        if (seen[idx]) {
            throw std::invalid_argument("duplicate count table row: " + line);
        }
        seen[idx] = true;
        table.counts[idx] = std::stoull(f[6]);
    }
    if (!header) {
        throw std::invalid_argument("count table is empty");
    }
    return table;
}

json counts_to_json(const CountTable &table) {
    json counts = json::object();
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        counts[cell_key(prep, y, z, b, c)] = table(prep, y, z, b, c);
                    }
                }
            }
        }
    }
    return {{"events_per_setting", table.events_per_setting}, {"counts", counts}};
}

CountTable counts_from_json(const json &j) {
    const json &counts = j.at("counts");
    if (counts.size() != kCells) {
        throw std::invalid_argument("count table needs 64 entries");
    }
    CountTable table;
    table.events_per_setting = j.value("events_per_setting", std::uint64_t{0});
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        auto f = split_csv_line(it.key());
        if (f.size() != 6) {
            throw std::invalid_argument("count key must be x0,x1,y,z,b,c: " + it.key());
        }
        int prep = prep_index(parse_bit(f[0]), parse_bit(f[1]));
        table(prep, parse_bit(f[2]), parse_bit(f[3]), parse_bit(f[4]), parse_bit(f[5])) =
            it.value().get<std::uint64_t>();
    }
    return table;
}

json distribution_to_json(const JointDistribution &dist) {
    json p = json::object();
    for (int prep = 0; prep < 4; prep++) {
        for (int y = 0; y < 2; y++) {
            for (int z = 0; z < 2; z++) {
                for (int b = 0; b < 2; b++) {
                    for (int c = 0; c < 2; c++) {
                        p[cell_key(prep, y, z, b, c)] = quantize(dist(prep, y, z, b, c));
                    }
                }
            }
        }
    }
    return {{"p", p}};
}

JointDistribution distribution_from_json(const json &j) {
    const json &p = j.contains("p") ? j.at("p") : j;
    if (p.size() != kCells) {
        throw std::invalid_argument("distribution needs 64 entries");
    }
    JointDistribution dist;
    for (auto it = p.begin(); it != p.end(); ++it) {
        auto f = split_csv_line(it.key());
        if (f.size() != 6) {
            throw std::invalid_argument("distribution key must be x0,x1,y,z,b,c: " + it.key());
        }
        int prep = prep_index(parse_bit(f[0]), parse_bit(f[1]));
        dist(prep, parse_bit(f[2]), parse_bit(f[3]), parse_bit(f[4]), parse_bit(f[5])) = it.value().get<double>();
    }
    return dist;
}

json certification_to_json(const CertificationResult &r) {
    return {
        {"w_ab", number(r.witnesses.w_ab)},
        {"w_ac", number(r.witnesses.w_ac)},
        {"sigma_ab", number(r.witnesses.sigma_ab)},
        {"sigma_ac", number(r.witnesses.sigma_ac)},
        {"eta_min", number(r.interval.eta_min)},
        {"eta_max", number(r.interval.eta_max)},
        {"sigma_min", number(r.interval.sigma_min)},
        {"sigma_max", number(r.interval.sigma_max)},
        {"consistent", r.interval.consistent},
        {"radicand_clamped", r.interval.radicand_clamped},
    };
}

CertificationResult certification_from_json(const json &j) {
    CertificationResult r;
    r.witnesses.w_ab = j.at("w_ab").get<double>();
    r.witnesses.w_ac = j.at("w_ac").get<double>();
    r.witnesses.sigma_ab = j.at("sigma_ab").get<double>();
    r.witnesses.sigma_ac = j.at("sigma_ac").get<double>();
    r.interval.eta_min = j.at("eta_min").get<double>();
    r.interval.eta_max = j.at("eta_max").get<double>();
    r.interval.sigma_min = number_or_inf(j.value("sigma_min", json(0.0)));
    r.interval.sigma_max = number_or_inf(j.value("sigma_max", json(0.0)));
    r.interval.consistent = j.at("consistent").get<bool>();
    r.interval.radicand_clamped = j.value("radicand_clamped", false);
    return r;
}

json incompatibility_to_json(const IncompatibilityResult &r) {
    return {
        {"d_bob", number(r.d_bob)},
        {"d_charlie", number(r.d_charlie)},
        {"eta_argmin", number(r.eta_argmin)},
        {"capped", r.capped},
        {"assumptions", r.assumptions},
    };
}

IncompatibilityResult incompatibility_from_json(const json &j) {
    IncompatibilityResult r;
    r.d_bob = j.at("d_bob").get<double>();
    r.d_charlie = j.at("d_charlie").get<double>();
    r.eta_argmin = j.at("eta_argmin").get<double>();
    r.capped = j.value("capped", false);
    r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    return r;
}

void write_tomography_csv(std::ostream &out, std::span<const SharpnessErrorPoint> rows) {
    out << kTomographyHeader << '\n';
    for (const SharpnessErrorPoint &r : rows) {
        out << format_number(r.eta_lab) << ',' << format_number(r.epsilon) << ',' << format_number(r.f_min) << ','
            << format_number(r.eta_est) << ',' << format_number(r.eta_error) << '\n';
    }
}

std::vector<SharpnessErrorPoint> read_tomography_csv(std::istream &in) {
    std::vector<SharpnessErrorPoint> rows;
    std::string line;
    if (!std::getline(in, line) || trimmed(line) != kTomographyHeader) {
        throw std::invalid_argument("tomography header must be " + std::string(kTomographyHeader));
    }
    while (std::getline(in, line)) {
        if (trimmed(line).empty()) {
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 5) {
            throw std::invalid_argument("tomography row needs 5 fields: " + line);
        }
        rows.push_back({parse_number(f[0]), parse_number(f[1]), parse_number(f[2]), parse_number(f[3]),
                        parse_number(f[4])});
    }
    return rows;
}

json bloch_to_json(const BlochVector &v) {
    return json::array({quantize(v.x), quantize(v.y), quantize(v.z)});
}

json worst_case_to_json(const WorstCaseResult &r) {
    json lab = json::array();
    for (const BlochVector &v : r.lab_bloch) {
        lab.push_back(bloch_to_json(v));
    }
    return {
        {"f_min", number(r.f_min)},
        {"eta_est", number(r.eta_est)},
        {"eta_error", number(r.eta_error)},
        {"average_fidelity", number(r.average_fidelity)},
        {"n_est", bloch_to_json(r.n_est)},
        {"lab_bloch", lab},
    };
}

}  // namespace seqrac::io
