// seqrac: simulate and certify the sequential qubit random access code.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "seqrac/io.h"
#include "seqrac/projective_bound.h"
#include "seqrac/report.h"

using namespace seqrac;

namespace {

constexpr std::uint64_t kDefaultSeed = 20200713;

std::uint64_t default_seed() {
    if (const char *env = std::getenv("SEQRAC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw std::invalid_argument(std::string("SEQRAC_SEED is not an unsigned integer: ") + env);
        }
    }
    return kDefaultSeed;
}

// Flag values; unset ones fall back to the config file, then to defaults.
struct Flags {
    std::string config_path;
    std::optional<double> eta;
    std::optional<double> theta;
    std::vector<double> thetas;
    std::optional<double> visibility;
    std::optional<std::uint64_t> events;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<double> w_ab, w_ac, sigma_ab, sigma_ac;
    std::optional<std::string> output;
    std::optional<std::string> format;

    std::string counts_path;
    int bootstrap = 0;
    std::vector<double> n0, n1;
    std::vector<double> etas;
    int restarts = 64;
    int points = 101;
};

RunConfig resolve(Mode mode, const Flags &f) {
    RunConfig c;
    c.mode = mode;
    c.seed = default_seed();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) {
            throw std::invalid_argument("cannot read config " + f.config_path);
        }
        c = config_from_json(io::json::parse(in), c);
        c.mode = mode;
    }
    if (f.eta) {
        c.eta = f.eta;
        c.theta_degrees.reset();
    }
    if (f.theta) {
        c.theta_degrees = f.theta;
        c.eta.reset();
    }
    if (!f.thetas.empty()) c.thetas = f.thetas;
    if (f.visibility) c.visibility = *f.visibility;
    if (f.events) c.events_per_setting = *f.events;
    if (f.seed) c.seed = *f.seed;
    if (f.epsilon) c.epsilon = *f.epsilon;
    if (f.w_ab) c.w_ab = *f.w_ab;
    if (f.w_ac) c.w_ac = *f.w_ac;
    if (f.sigma_ab) c.sigma_ab = *f.sigma_ab;
    if (f.sigma_ac) c.sigma_ac = *f.sigma_ac;
    if (f.output) c.output_path = *f.output;
    if (f.format) c.format = parse_format(*f.format);
    c.validate();
    return c;
}

class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot write " + path);
            }
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

   private:
    std::unique_ptr<std::ofstream> file_;
};

void print_warnings(const std::vector<std::string> &warnings) {
    for (const std::string &w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

WitnessPair witnesses_from(const RunConfig &c, const Flags &f) {
    if (f.counts_path.empty()) {
        return {c.w_ab, c.w_ac, c.sigma_ab, c.sigma_ac};
    }
    std::ifstream in(f.counts_path);
    if (!in) {
        throw std::invalid_argument("cannot read counts " + f.counts_path);
    }
    CountTable table = io::read_counts_csv(in);
    return f.bootstrap > 0 ? bootstrap_witnesses(table, f.bootstrap, c.seed) : compute_witnesses(table);
}

void cmd_sweep(const RunConfig &c) {
    auto rows = run_sweep(c);
    auto warnings = sweep_warnings(rows);
    Output out(c.output_path);
    if (c.format == Format::json) {
        out.stream() << io::json{{"rows", rows_to_json(rows)}, {"warnings", warnings}}.dump(2) << '\n';
    } else {
        write_rows_csv(out.stream(), rows);
    }
    print_warnings(warnings);
}

void cmd_simulate(const RunConfig &c) {
    auto eta = c.target_eta();
    if (!eta) {
        throw std::invalid_argument("simulate needs --eta or --theta");
    }
    ProtocolSpec spec = ProtocolSpec::optimal(*eta, c.visibility);
    Output out(c.output_path);
    if (c.events_per_setting == 0) {
        out.stream() << io::distribution_to_json(exact_distribution(spec)).dump(2) << '\n';
        return;
    }
    CountTable table = sample_counts(spec, c.events_per_setting, c.seed);
    if (c.format == Format::json) {
        out.stream() << io::counts_to_json(table).dump(2) << '\n';
    } else {
        io::write_counts_csv(out.stream(), table);
    }
}

void cmd_certify(const RunConfig &c, const Flags &f) {
    CertifyReport r = run_certify(witnesses_from(c, f));
    Output out(c.output_path);
    out.stream() << certify_report_to_json(r).dump(2) << '\n';
    print_warnings(r.warnings);
}

void cmd_incompat(const RunConfig &c, const Flags &f) {
    Output out(c.output_path);
    if (!f.n0.empty() || !f.n1.empty()) {
        if (f.n0.size() != 3 || f.n1.size() != 3) {
            throw std::invalid_argument("--n0 and --n1 need three components each");
        }
        double d = degree_of_incompatibility({f.n0[0], f.n0[1], f.n0[2]}, {f.n1[0], f.n1[1], f.n1[2]});
        out.stream() << io::json{{"d", io::quantize(d)}}.dump(2) << '\n';
        return;
    }
    CertifyReport r = run_certify(witnesses_from(c, f));
    io::json j = io::incompatibility_to_json(r.incompatibility);
    j["warnings"] = r.warnings;
    out.stream() << j.dump(2) << '\n';
    print_warnings(r.warnings);
}

void cmd_tomo(const RunConfig &c, const Flags &f) {
    std::vector<double> grid = f.etas;
    if (auto eta = c.target_eta()) {
        grid = {*eta};
    }
    if (grid.empty()) {
        grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    }
    WorstCaseOptions options;
    options.restarts = f.restarts;
    options.seed = c.seed;
    Output out(c.output_path);
    if (c.format == Format::json) {
        io::json rows = io::json::array();
        for (double eta : grid) {
            TomographyScenario s{Observable::unbiased({0.0, 0.0, eta}), c.epsilon};
            io::json row = io::worst_case_to_json(worst_case_fidelity(s, options));
            row["eta_lab"] = eta;
            row["epsilon"] = c.epsilon;
            rows.push_back(row);
        }
        out.stream() << rows.dump(2) << '\n';
    } else {
        io::write_tomography_csv(out.stream(), sharpness_error_curve(c.epsilon, grid, options));
    }
}

void cmd_projective_bound(const RunConfig &c, const Flags &f) {
    Output out(c.output_path);
    auto rows = boundary_table(f.points);
    write_boundary_csv(out.stream(), rows);
}

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", f.output, "Output file (default stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", f.seed, "Random seed (default $SEQRAC_SEED or 20200713)");
}

void add_target(CLI::App *cmd, Flags &f) {
    auto *eta = cmd->add_option("--eta", f.eta, "Sharpness in [0, 1]");
    auto *theta = cmd->add_option("--theta", f.theta, "Half-wave-plate angle in degrees, [0, 22.5]");
    eta->excludes(theta);
}

void add_witness_inputs(CLI::App *cmd, Flags &f) {
    cmd->add_option("--w-ab", f.w_ab, "W_AB");
    cmd->add_option("--w-ac", f.w_ac, "W_AC");
    cmd->add_option("--sigma-ab", f.sigma_ab, "Standard error of W_AB");
    cmd->add_option("--sigma-ac", f.sigma_ac, "Standard error of W_AC");
    cmd->add_option("--counts", f.counts_path, "Count table CSV; replaces the witness flags")
        ->check(CLI::ExistingFile);
    cmd->add_option("--bootstrap", f.bootstrap, "Bootstrap resamples for sigmas from --counts (0 = analytic)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sequential qubit random access code: simulation and certification"};
    app.require_subcommand(1);
    Flags f;

    auto *sweep = app.add_subcommand("sweep", "Witnesses, sharpness interval and incompatibility per waveplate angle");
    add_common(sweep, f);
    add_target(sweep, f);
    sweep->add_option("--thetas", f.thetas, "Angle grid in degrees");
    sweep->add_option("--visibility", f.visibility, "Preparation visibility in [0, 1]");
    sweep->add_option("--events", f.events, "Events per setting; 0 for exact probabilities");

    auto *simulate = app.add_subcommand("simulate", "Exact distribution (JSON) or sampled counts");
    add_common(simulate, f);
    add_target(simulate, f);
    simulate->add_option("--visibility", f.visibility, "Preparation visibility in [0, 1]");
    simulate->add_option("--events", f.events, "Events per setting; 0 for the exact distribution");

    auto *certify = app.add_subcommand("certify", "Sharpness interval and incompatibility bounds from witnesses");
    add_common(certify, f);
    add_witness_inputs(certify, f);

    auto *incompat = app.add_subcommand("incompat", "Incompatibility bounds from witnesses or two Bloch vectors");
    add_common(incompat, f);
    add_witness_inputs(incompat, f);
    incompat->add_option("--n0", f.n0, "First observable's Bloch vector (3 numbers)")->expected(3);
    incompat->add_option("--n1", f.n1, "Second observable's Bloch vector (3 numbers)")->expected(3);

    auto *tomo = app.add_subcommand("tomo", "Worst-case detector tomography under preparation error");
    add_common(tomo, f);
    add_target(tomo, f);
    tomo->add_option("--epsilon", f.epsilon, "Average preparation infidelity in [0, 1]");
    tomo->add_option("--etas", f.etas, "Grid of lab sharpness values");
    tomo->add_option("--restarts", f.restarts, "Descent restarts")->check(CLI::PositiveNumber);

    auto *projective = app.add_subcommand("projective-bound", "Optimal, projective and classical boundaries");
    add_common(projective, f);
    projective->add_option("--points", f.points, "Number of W_AB grid points")->check(CLI::Range(2, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            cmd_sweep(resolve(Mode::sweep, f));
        } else if (simulate->parsed()) {
            cmd_simulate(resolve(Mode::simulate, f));
        } else if (certify->parsed()) {
            cmd_certify(resolve(Mode::certify, f), f);
        } else if (incompat->parsed()) {
            cmd_incompat(resolve(Mode::incompat, f), f);
        } else if (tomo->parsed()) {
            cmd_tomo(resolve(Mode::tomo, f), f);
        } else if (projective->parsed()) {
            cmd_projective_bound(resolve(Mode::projective_bound, f), f);
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
