#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "cyclesim/builder.h"
#include "cyclesim/errors.h"
#include "cyclesim/oracle.h"
#include "cyclesim/state_io.h"
#include "cyclesim/verify.h"
#include "cyclesim/weights_io.h"

namespace cyclesim::cli {

namespace {

enum class Format { kText, kJson };

struct RunConfig {
    int n = 0;
    Variant variant = Variant::kProjector;
    AncillaMode ancilla_mode = AncillaMode::kReuse;
    std::optional<std::uint64_t> seed;
    std::size_t term_budget = kDefaultTermBudget;
    std::string output_path;
    Format format = Format::kText;
    std::string weights_path;
    std::optional<int> level;
    int sample_trials = 0;
};

/// Internal cross-check disagreement; maps to exit code 3.
class CrossCheckFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string tour_str(const std::vector<int> &tour) {
    std::string s;
    for (int v : tour) {
        s += (s.empty() ? "" : " ") + std::to_string(v);
    }
    return s;
}

void write_json(const std::filesystem::path &path, const Json &j) {
    std::ofstream file(path);
    if (!file) {
        throw ValidationError("cannot write " + path.string());
    }
    file << j.dump(2) << "\n";
}

void validate_n(const RunConfig &config) {
    if (config.n < 3) {
        throw ValidationError("--n must be >= 3, got " + std::to_string(config.n));
    }
}

int cmd_build(const RunConfig &config, std::ostream &out) {
    validate_n(config);
    BuildResult result = build_superposition(config.n, {config.variant, config.ancilla_mode, config.term_budget});
    const Json ledger = ledger_to_json(result.ledger);
    if (!config.output_path.empty()) {
        std::filesystem::path state_path(config.output_path);
        std::filesystem::path ledger_path = state_path;
        ledger_path.replace_extension(".ledger.json");
        write_json(state_path, state_to_json(result.state));
        write_json(ledger_path, ledger);
    }
    const int live_width = edges_among(config.n) + result.ancillae.peak_live_bits();
    const char *mode = config.ancilla_mode == AncillaMode::kReuse ? "reuse" : "retain";
    if (config.format == Format::kJson) {
        Json j;
        j["n"] = config.n;
        j["terms"] = result.state.size();
        j["levels_ok"] = result.ledger.levels_ok();
        j["ancilla_mode"] = mode;
        j["ancilla_bits"] = result.ancillae.allocated_bits();
        j["live_label_width"] = live_width;
        j["sub_ops"] = result.ledger.total_sub_ops();
        j["ledger"] = ledger;
        out << j.dump(2) << "\n";
    } else {
        out << "n=" << config.n << " terms=" << result.state.size()
            << " levels_ok=" << bool_str(result.ledger.levels_ok()) << "\n";
        for (const LevelRecord &e : result.ledger.entries()) {
            out << "m=" << e.m << " p=" << e.p << " expected_repetitions=" << e.expected_repetitions()
                << " terms_before=" << e.terms_before << " terms_after=" << e.terms_after << "\n";
        }
        out << "ancilla_mode=" << mode << " ancilla_bits=" << result.ancillae.allocated_bits()
            << " live_label_width=" << live_width << " sub_ops=" << result.ledger.total_sub_ops() << "\n";
    }
    return kOk;
}

int cmd_verify(const RunConfig &config, std::ostream &out) {
    if (config.n < 3 || config.n > 8) {
        throw ValidationError("verify supports 3 <= --n <= 8, got " + std::to_string(config.n));
    }
    std::vector<CheckResult> results = run_verification(config.n);
    const bool all_pass = std::all_of(results.begin(), results.end(), [](const CheckResult &r) { return r.pass; });
    if (config.format == Format::kJson) {
        Json checks = Json::array();
        for (const CheckResult &r : results) {
            checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        out << Json{{"n", config.n}, {"pass", all_pass}, {"checks", checks}}.dump(2) << "\n";
    } else {
        for (const CheckResult &r : results) {
            out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        }
    }
    return all_pass ? kOk : kUsage;
}

int cmd_solve(const RunConfig &config, std::ostream &out) {
    if (config.weights_path.empty()) {
        throw ValidationError("solve requires --weights");
    }
    WeightMatrix w = load_weights(config.weights_path);
    if (config.n != 0 && config.n != w.vertices()) {
        throw ValidationError("--n " + std::to_string(config.n) + " does not match the " +
                              std::to_string(w.vertices()) + "-vertex weight file");
    }
    BuildResult built = build_superposition(w.vertices(), {config.variant, config.ancilla_mode, config.term_budget});
    TourResult from_state = min_tour_from_state(w, built.state);
    TourResult exhaustive = min_tour_exhaustive(w);
    const bool agree = from_state == exhaustive;
    const std::vector<int> tour = decode_cycle(from_state.mask, w.vertices());
    if (config.format == Format::kJson) {
        Json j;
        j["n"] = w.vertices();
        j["tour"] = tour;
        j["weight"] = from_state.weight;
        j["mask"] = from_state.mask.to_binary();
        j["state_source"] = {{"mask", from_state.mask.to_binary()}, {"weight", from_state.weight}};
        j["exhaustive_source"] = {{"mask", exhaustive.mask.to_binary()}, {"weight", exhaustive.weight}};
        j["agree"] = agree;
        out << j.dump(2) << "\n";
    } else {
        out << "tour=" << tour_str(tour) << " weight=" << from_state.weight << " mask=" << from_state.mask.to_grouped()
            << "\n";
        out << "state_source weight=" << from_state.weight << " mask=" << from_state.mask.to_grouped() << "\n";
        out << "exhaustive_source weight=" << exhaustive.weight << " mask=" << exhaustive.mask.to_grouped() << "\n";
        out << "agree=" << bool_str(agree) << "\n";
    }
    if (!agree) {
        throw CrossCheckFailure("state-sourced and exhaustive minima disagree");
    }
    return kOk;
}

int cmd_trace(const RunConfig &config, std::ostream &out) {
    validate_n(config);
    if (config.n > kMaxOracleVertices) {
        throw CapacityExceeded("trace supports n <= " + std::to_string(kMaxOracleVertices));
    }
    const int level = config.level.value_or(config.n - 1);
    if (level < 3 || level >= config.n) {
        throw ValidationError("--level must satisfy 3 <= level < n");
    }
    LevelTrace trace = trace_level(config.n, level);
    std::size_t fired_sum = 0;
    for (const GateTraceEntry &g : trace.gates) {
        fired_sum += g.fired;
    }
    std::vector<RepetitionSample> samples;
    if (config.sample_trials > 0) {
        samples = sample_repetitions(config.n, config.sample_trials, config.seed.value_or(1));
    }
    if (config.format == Format::kJson) {
        Json gates = Json::array();
        for (const GateTraceEntry &g : trace.gates) {
            gates.push_back({{"m", g.spec.m},
                             {"l", g.spec.l},
                             {"break", {g.spec.broken.hi, g.spec.broken.lo}},
                             {"new", {g.spec.new_lo, g.spec.new_hi}},
                             {"fired", g.fired}});
        }
        Json j;
        j["n"] = config.n;
        j["level"] = level;
        j["gates"] = gates;
        j["fired_total"] = fired_sum;
        j["fired_terms"] = trace.fired_terms;
        j["residual_terms"] = trace.residual_terms;
        j["good"] = trace.good.str();
        j["residual"] = trace.residual.str();
        j["term_weight"] = trace.term_weight.str();
        if (!samples.empty()) {
            Json s = Json::array();
            for (const RepetitionSample &r : samples) {
                s.push_back({{"m", r.m}, {"trials", r.trials}, {"mean", r.mean}, {"expected", r.expected.str()}});
            }
            j["samples"] = s;
        }
        out << j.dump(2) << "\n";
    } else {
        for (const GateTraceEntry &g : trace.gates) {
            out << format_trace_line(g) << "\n";
        }
        out << "fired_total=" << fired_sum << " fired_terms=" << trace.fired_terms
            << " residual_terms=" << trace.residual_terms << "\n";
        out << "good=" << trace.good << " residual=" << trace.residual << " term_weight=" << trace.term_weight << "\n";
        for (const RepetitionSample &r : samples) {
            out << "sample m=" << r.m << " trials=" << r.trials << " mean=" << r.mean << " expected=" << r.expected
                << "\n";
        }
    }
    return kOk;
}

int cmd_reverse(const RunConfig &config, std::ostream &out) {
    validate_n(config);
    if (config.n < 4) {
        throw ValidationError("reverse needs n >= 4");
    }
    const int m = config.level.value_or(config.n - 1);
    if (m < 3 || m >= config.n) {
        throw ValidationError("--level must satisfy 3 <= level < n");
    }
    BuildOptions options{config.variant, config.ancilla_mode, config.term_budget};
    SparseState upper = widen(build_superposition(m + 1, options).state, config.n);
    SparseState reversed = reverse_level(upper, m);

    std::map<std::uint64_t, WideInt> marginal;
    for (const Term &t : reversed.terms()) {
        marginal[t.label.path] += static_cast<WideInt>(t.c) * t.c;
    }
    const bool uniform = std::all_of(marginal.begin(), marginal.end(),
                                     [&](const auto &kv) { return kv.second == marginal.begin()->second; });
    SparseState restored = detach_ancilla(apply_um(reversed, m));
    const bool round_trip = restored == upper;

    if (!config.output_path.empty()) {
        write_json(config.output_path, state_to_json(reversed));
    }
    if (config.format == Format::kJson) {
        Json j;
        j["n"] = config.n;
        j["level"] = m;
        j["terms"] = reversed.size();
        j["path_masks"] = marginal.size();
        j["marginal_uniform"] = uniform;
        j["round_trip"] = round_trip;
        j["state"] = state_to_json(reversed);
        out << j.dump(2) << "\n";
    } else {
        out << "n=" << config.n << " level=" << m << " terms=" << reversed.size() << " path_masks=" << marginal.size()
            << " marginal_uniform=" << bool_str(uniform) << " round_trip=" << bool_str(round_trip) << "\n";
    }
    if (!uniform || !round_trip) {
        throw CrossCheckFailure("reverse walk is not uniform or does not round-trip");
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact simulator of the level-by-level Hamiltonian cycle superposition"};
    app.require_subcommand(1);
    RunConfig config;

    const std::map<std::string, Variant> variants{{"projector", Variant::kProjector}, {"aux", Variant::kAux}};
    const std::map<std::string, AncillaMode> modes{{"reuse", AncillaMode::kReuse}, {"retain", AncillaMode::kRetain}};
    const std::map<std::string, Format> formats{{"text", Format::kText}, {"json", Format::kJson}};

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--variant", config.variant, "Post-selection: projector or aux")
            ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));
        sub->add_option("--ancilla", config.ancilla_mode, "Ancilla handling: reuse or retain")
            ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
        sub->add_option("--budget", config.term_budget, "Maximum live terms");
        sub->add_option("--format", config.format, "Output format: text or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--seed", config.seed, "Seed for Monte-Carlo sampling");
    };

    CLI::App *build = app.add_subcommand("build", "Build the uniform superposition of all n-vertex cycles");
    build->add_option("--n", config.n, "Vertex count")->required();
    build->add_option("--out", config.output_path, "State JSON path; the ledger goes next to it");
    add_common(build);

    CLI::App *verify = app.add_subcommand("verify", "Run the exhaustive property checks");
    verify->add_option("--n", config.n, "Vertex count (3..8)")->required();
    add_common(verify);

    CLI::App *solve = app.add_subcommand("solve", "Minimum-weight tour from the built superposition");
    solve->add_option("--weights", config.weights_path, "CSV or JSON weight matrix")->required();
    solve->add_option("--n", config.n, "Expected vertex count");
    add_common(solve);

    CLI::App *trace = app.add_subcommand("trace", "Gate trace and fired/residual split for one level");
    trace->add_option("--n", config.n, "Vertex count")->required();
    trace->add_option("--level", config.level, "Input level m of U_m (default n-1)");
    trace->add_option("--sample", config.sample_trials, "Monte-Carlo trials per level");
    add_common(trace);

    CLI::App *reverse = app.add_subcommand("reverse", "Apply the inverse mapping to a level m+1 superposition");
    reverse->add_option("--n", config.n, "Vertex count")->required();
    reverse->add_option("--level", config.level, "Target level m (default n-1)");
    reverse->add_option("--out", config.output_path, "State JSON path");
    add_common(reverse);

    try {
        std::vector<std::string> reversed_args(args.rbegin(), args.rend());
        app.parse(reversed_args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (build->parsed()) {
            return cmd_build(config, out);
        }
        if (verify->parsed()) {
            return cmd_verify(config, out);
        }
        if (solve->parsed()) {
            return cmd_solve(config, out);
        }
        if (trace->parsed()) {
            return cmd_trace(config, out);
        }
        return cmd_reverse(config, out);
    } catch (const CapacityExceeded &e) {
        err << "capacity exceeded: " << e.what() << "\n";
        return kCapacity;
    } catch (const CrossCheckFailure &e) {
        err << "cross-check failed: " << e.what() << "\n";
        return kCrossCheck;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace cyclesim::cli
