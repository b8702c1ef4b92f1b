#include "hardy_means/cli.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/hardy.hpp"
#include "hardy_means/harness.hpp"
#include "hardy_means/json_io.hpp"
#include "hardy_means/limits.hpp"
#include "hardy_means/qd_mean.hpp"
#include "hardy_means/validation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hardy_means {

namespace {

std::vector<double> parse_data(const std::string& text) {
    std::ifstream probe(text);
    if (probe) return read_csv_column(text);
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        const auto rest = cell.find_first_not_of(" \t", used);
        if (used == 0 || rest != std::string::npos) {
            throw IoError("--data '" + text + "' is neither a readable file nor a comma-separated list");
        }
        out.push_back(v);
    }
    return out;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const ConsistencyError*>(&e) ||
        dynamic_cast<const InconsistencyError*>(&e)) {
        return kExitSolver;
    }
    return kExitValidation;
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

unsigned long long default_seed() {
    if (const char* s = std::getenv("HARDY_MEANS_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used);
            if (used == std::string(s).size()) return v;
        } catch (const std::exception&) {
        }
    }
    return 42;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homogeneous quasideviation means, concave envelopes and Hardy constants", "hardy_means"};
    app.require_subcommand(1);

    std::string generator;
    std::string data;
    auto* mean = app.add_subcommand("mean", "Mean of the data generated by the generator");
    mean->add_option("--generator", generator, "Preset, inline JSON or JSON file")->required();
    mean->add_option("--data", data, "Comma-separated values or a one-column CSV file")->required();

    auto* envelope = app.add_subcommand("envelope", "Concave envelope parameters (a, b, p, q)");
    envelope->add_option("--generator", generator)->required();

    std::string route = "auto";
    bool trace = false;
    auto* hardy = app.add_subcommand("hardy", "Hardy constant report");
    hardy->add_option("--generator", generator)->required();
    hardy->add_option("--route", route)->check(CLI::IsMember({"auto", "concave", "truncated", "envelope"}));
    hardy->add_flag("--trace", trace, "Include the bracketing history and quadrature panels");

    std::string klass = "phi";
    double p = 0.0;
    std::size_t trials = 200;
    auto* validate = app.add_subcommand("validate", "Grid certificate for a class condition");
    validate->add_option("--generator", generator)->required();
    validate->add_option("--class", klass)->check(CLI::IsMember({"f", "phi", "lhqd", "axioms"}));
    validate->add_option("--p", p, "Exponent for the lhqd check");
    validate->add_option("--trials", trials, "Random vectors for --class axioms");

    std::string sequence;
    std::size_t n = 1024;
    auto* ratio = app.add_subcommand("ratio", "Empirical Hardy ratio on a sequence");
    ratio->add_option("--generator", generator)->required();
    ratio->add_option("--sequence", sequence, "geometric:<r>, power_decay:<s>, constant, csv:<path> or JSON")
        ->required();
    ratio->add_option("--n", n, "Sequence length N")->check(CLI::PositiveNumber);

    std::string config;
    std::string out_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Generator x sequence grid of empirical ratios");
    sweep_cmd->add_option("--config", config)->required();
    sweep_cmd->add_option("--out", out_path, "CSV destination (default stdout)");

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*mean) {
            const MeanRequest req(parse_generator(generator), parse_data(data));
            const std::ios_base::fmtflags flags = out.flags();
            out << std::setprecision(17) << mean_generic(req) << '\n';
            out.flags(flags);
        } else if (*envelope) {
            print(out, to_json(concave_envelope(resolve_limits(parse_generator(generator)))));
        } else if (*hardy) {
            const auto g = parse_generator(generator);
            HardyOptions opts;
            opts.trace = trace;
            HardyReport rep;
            if (route == "auto") {
                rep = theoretical_constant(g, opts);
            } else if (route == "concave") {
                rep = hardy_concave(g, opts);
            } else if (route == "truncated") {
                const double sup = supremum(g);
                if (!std::isfinite(sup)) throw PreconditionError("truncated route needs a generator bounded above");
                rep = hardy_truncated(sup, opts);
            } else {
                rep = hardy_envelope(g, opts);
            }
            print(out, to_json(rep));
        } else if (*validate) {
            const auto g = resolve_limits(parse_generator(generator));
            const auto grid = grid_for(g);
            if (klass == "axioms") {
                const auto seed = default_seed();
                const auto rep = check_mean_axioms(g, trials, seed);
                print(out, json{{"passed", rep.passed},
                                {"trials", rep.trials},
                                {"seed", seed},
                                {"failure", rep.failure},
                                {"counterexample", rep.counterexample}});
                return rep.passed ? kExitOk : kExitValidation;
            }
            std::vector<ValidationReport> reports;
            if (klass == "phi") reports = validate_phi(g, grid);
            else if (klass == "f") reports = validate_script_f(g, grid);
            else reports.push_back(check_lhqd(g, p, grid));
            print(out, to_json(reports));
            return all_passed(reports) ? kExitOk : kExitValidation;
        } else if (*ratio) {
            const auto rep = hardy_ratio(parse_generator(generator), parse_sequence(sequence, n));
            print(out, to_json(rep));
        } else if (*sweep_cmd) {
            std::ifstream in(config);
            if (!in) throw IoError("cannot open " + config);
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw ArgumentError("invalid JSON in " + config + ": " + e.what());
            }
            const auto csv = sweep_csv(sweep(sweep_config_from_json(cfg)));
            if (out_path.empty()) {
                out << csv;
            } else {
                std::ofstream f(out_path);
                if (!f) throw IoError("cannot write " + out_path);
                f << csv;
                if (!f) throw IoError("write to " + out_path + " failed");
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace hardy_means
