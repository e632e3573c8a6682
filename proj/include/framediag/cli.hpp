#ifndef FRAMEDIAG_CLI_HPP
#define FRAMEDIAG_CLI_HPP

// Command-line surface of the framediag tool.
//
// Exit status: 0 success, 2 invalid input or configuration, 3 a battery
// check failed, 1 unexpected internal error.  Diagnostics go to stderr; the
// report goes to --out (written atomically) or stdout.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "framediag/battery.hpp"
#include "framediag/block_spectrum.hpp"
#include "framediag/diagnostics.hpp"
#include "framediag/error.hpp"
#include "framediag/json_io.hpp"
#include "framediag/paper_examples.hpp"
#include "framediag/realize.hpp"
#include "framediag/report.hpp"
#include "framediag/sweep.hpp"

namespace framediag::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_check_failed = 3;

/// Environment variable holding the default tolerance.
inline constexpr const char* tol_env = "FRAMEDIAG_TOL";

/// Largest dimension or count analysed densely; beyond it the example and
/// cross-gram commands report the sparse spectral summary only.
inline constexpr std::size_t dense_analysis_limit = 1024;

enum class Command { classify, cross_gram, dual_check, example, sweep, battery };

inline std::string to_string(Command c) {
    switch (c) {
        case Command::classify: return "classify";
        case Command::cross_gram: return "cross-gram";
        case Command::dual_check: return "dual-check";
        case Command::example: return "example";
        case Command::sweep: return "sweep";
        case Command::battery: return "battery";
    }
    return "unknown";
}

struct RunConfig {
    Command command{Command::example};
    std::string input;
    std::string f_path;
    std::string g_path;
    std::string example_id;
    std::optional<std::size_t> dim;
    std::vector<std::size_t> dims;
    DimRange dim_range{2, 8};
    double tol{default_tol};
    std::uint64_t seed{42};
    std::size_t trials{200};
    std::size_t probes{default_probes};
    /// Battery worker threads (0 = hardware concurrency); not echoed.
    std::size_t threads{1};
    std::string out;
    ReportFormat format{ReportFormat::json};
};

inline void validate(const RunConfig& c) {
    if (!(c.tol > 0.0 && c.tol < 1.0)) throw invalid_spec("tol must lie in (0, 1)");
    if (c.dim && *c.dim == 0) throw invalid_spec("--dim must be >= 1");
    if (c.trials == 0) throw invalid_spec("--trials must be >= 1");
    switch (c.command) {
        case Command::classify:
            if (c.input.empty()) throw invalid_spec("classify requires --input");
            break;
        case Command::cross_gram:
        case Command::dual_check:
            if (c.f_path.empty() || c.g_path.empty()) throw invalid_spec(to_string(c.command) + " requires --f and --g");
            break;
        case Command::example:
            if (c.example_id.empty()) throw invalid_spec("example requires --id");
            if (!c.dim) throw invalid_spec("example requires --dim");
            break;
        case Command::sweep:
            if (c.example_id.empty() && (c.f_path.empty() || c.g_path.empty())) {
                throw invalid_spec("sweep requires --id or both --f and --g");
            }
            if (c.dims.size() < 2) throw invalid_spec("sweep requires at least two --dims values");
            break;
        case Command::battery:
            if (c.dim_range.lo == 0 || c.dim_range.lo > c.dim_range.hi) throw invalid_spec("invalid --dims range");
            break;
    }
}

inline json config_echo(const RunConfig& c) {
    json j{{"command", to_string(c.command)},
           {"tol", c.tol},
           {"format", c.format == ReportFormat::json ? "json" : "text"}};
    switch (c.command) {
        case Command::classify: j["input"] = c.input; break;
        case Command::cross_gram: j["f"] = c.f_path; j["g"] = c.g_path; break;
        case Command::dual_check:
            j["f"] = c.f_path;
            j["g"] = c.g_path;
            j["probes"] = c.probes;
            j["seed"] = c.seed;
            break;
        case Command::example: j["id"] = c.example_id; break;
        case Command::sweep:
            if (!c.example_id.empty()) j["id"] = c.example_id;
            if (!c.f_path.empty()) j["f"] = c.f_path;
            if (!c.g_path.empty()) j["g"] = c.g_path;
            j["dims"] = c.dims;
            break;
        case Command::battery:
            j["seed"] = c.seed;
            j["trials"] = c.trials;
            j["dims"] = {{"lo", c.dim_range.lo}, {"hi", c.dim_range.hi}};
            break;
    }
    j["dim"] = c.dim ? json(*c.dim) : json(nullptr);
    return j;
}

namespace detail {

/// Element count of kinds that are finite by construction.
inline std::optional<std::size_t> natural_count(const SequenceSpec& s) {
    if (const auto* e = std::get_if<spec::Explicit>(&s)) return e->columns.size();
    if (const auto* r = std::get_if<spec::RandomRiesz>(&s)) return r->dim;
    if (const auto* r = std::get_if<spec::RandomFrame>(&s)) return r->count;
    if (const auto* p = std::get_if<Pattern>(&s); p && !p->infinite()) return p->prefix.size();
    return std::nullopt;
}

inline std::size_t resolve_n(const RunConfig& c, std::initializer_list<const SequenceSpec*> specs) {
    if (c.dim) return *c.dim;
    std::size_t n = 0;
    for (const SequenceSpec* s : specs) {
        const auto count = natural_count(*s);
        if (!count) throw invalid_spec("--dim is required for sequences of kind " + std::string(kind_name(*s)));
        n = std::max(n, *count);
    }
    return n;
}

inline bool fits_dense(const SparseSequence& f, const SparseSequence& g) {
    return std::max({f.dim, f.count(), g.count()}) <= dense_analysis_limit;
}

inline json pair_result(const SparseSequence& fs, const SparseSequence& gs, const RunConfig& c, bool with_duality) {
    if (fs.dim != gs.dim) {
        throw dimension_mismatch("ambient dimensions differ (f, g)", fs.dim, fs.count(), gs.dim, gs.count());
    }
    json result{{"dim", fs.dim}, {"f_count", fs.count()}, {"g_count", gs.count()}};
    result["spectral"] = to_json(analyze_cross_gram_terms(fs, gs, c.tol));
    if (!fits_dense(fs, gs)) {
        result["mode"] = "sparse";
        if (with_duality && fs.count() == gs.count()) result["pairing_bounds"] = to_json(pairing_bounds_terms(fs, gs, c.tol));
        return result;
    }
    result["mode"] = "dense";
    const RealizedSequence f = fs.to_dense();
    const RealizedSequence g = gs.to_dense();
    result["cross_gram"] = to_json(analyze_cross_gram(f, g, c.tol));
    result["classification"] = {{"f", to_json(classify_sequence(f, c.tol))}, {"g", to_json(classify_sequence(g, c.tol))}};
    if (with_duality && f.count() == g.count()) result["duality"] = to_json(check_duality(f, g, c.tol, c.probes, c.seed));
    return result;
}

}  // namespace detail

/// Runs the command and returns the report; framediag::error on invalid
/// input.  The report's "result" carries the command-specific payload.
inline json execute(const RunConfig& c) {
    validate(c);
    json result;
    switch (c.command) {
        case Command::classify: {
            const SequenceSpec s = load_sequence_file(c.input);
            const std::size_t n = detail::resolve_n(c, {&s});
            const RealizedSequence seq = realize(s, n);
            result = {{"kind", kind_name(s)},
                      {"n", n},
                      {"dim", seq.dim()},
                      {"count", seq.count()},
                      {"classification", to_json(classify_sequence(seq, c.tol))}};
            break;
        }
        case Command::cross_gram: {
            const SequenceSpec f = load_sequence_file(c.f_path);
            const SequenceSpec g = load_sequence_file(c.g_path);
            const std::size_t n = detail::resolve_n(c, {&f, &g});
            auto [fs, gs] = realize_pair_terms(f, g, n);
            result = detail::pair_result(fs, gs, c, false);
            result["n"] = n;
            break;
        }
        case Command::dual_check: {
            const SequenceSpec f = load_sequence_file(c.f_path);
            const SequenceSpec g = load_sequence_file(c.g_path);
            const std::size_t n = detail::resolve_n(c, {&f, &g});
            const auto [fr, gr] = realize_pair(f, g, n);
            result = {{"n", n}, {"duality", to_json(check_duality(fr, gr, c.tol, c.probes, c.seed))}};
            break;
        }
        case Command::example: {
            const ExampleId id = example_from_name(c.example_id);
            const ExampleEntry entry = example_entry(id);
            auto [f, g] = paper_example_terms(id, *c.dim);
            result = detail::pair_result(f, g, c, true);
            result["id"] = to_string(id);
            result["n"] = *c.dim;
            result["summary"] = entry.summary;
            result["inferred_tail"] = entry.inferred_tail;
            break;
        }
        case Command::sweep: {
            PairSpec pair = c.example_id.empty()
                                ? PairSpec{load_sequence_file(c.f_path), load_sequence_file(c.g_path)}
                                : example_pair_spec(example_from_name(c.example_id));
            result = to_json(truncation_sweep(pair, c.dims, c.tol));
            break;
        }
        case Command::battery: {
            BatteryOptions opt;
            opt.seed = c.seed;
            opt.trials = c.trials;
            opt.dims = c.dim_range;
            opt.tol = c.tol;
            opt.threads = c.threads;
            result = to_json(theorem_battery(opt));
            break;
        }
    }
    return report_envelope(to_string(c.command), config_echo(c), std::move(result));
}

inline void write_atomically(const std::string& path, const std::string& bytes) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw invalid_spec("cannot write '" + tmp.string() + "'");
        out << bytes;
        if (!out) throw invalid_spec("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, target);
}

inline int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        const json report = execute(c);
        const std::string bytes = emit_report(report, c.format);
        if (c.out.empty()) {
            out << bytes;
        } else {
            write_atomically(c.out, bytes);
        }
        if (c.command == Command::battery && !report["result"]["all_passed"].get<bool>()) {
            for (const auto& check : report["result"]["checks"]) {
                if (check["failed"].get<std::size_t>() > 0) {
                    err << "battery check (" << check["id"].get<std::string>() << ") failed "
                        << check["failed"].get<std::size_t>() << " of " << c.trials << " trials\n";
                }
            }
            return exit_check_failed;
        }
        return exit_ok;
    } catch (const framediag::error& e) {
        err << "framediag: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "framediag: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "framediag: internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

namespace detail {

inline std::vector<std::size_t> parse_dim_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw invalid_spec("invalid --dims entry '" + item + "'");
        }
        if (pos != item.size() || v == 0) throw invalid_spec("invalid --dims entry '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

inline DimRange parse_dim_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        const auto v = parse_dim_list(text);
        if (v.size() != 1) throw invalid_spec("--dims must be lo..hi");
        return {v[0], v[0]};
    }
    const auto lo = parse_dim_list(text.substr(0, sep));
    const auto hi = parse_dim_list(text.substr(sep + 2));
    if (lo.size() != 1 || hi.size() != 1) throw invalid_spec("--dims must be lo..hi");
    return {lo[0], hi[0]};
}

inline double default_tolerance() {
    const char* env = std::getenv(tol_env);
    if (env == nullptr || *env == '\0') return default_tol;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(env, &pos);
    } catch (const std::exception&) {
        throw invalid_spec(std::string(tol_env) + " is not a number");
    }
    if (env[pos] != '\0') throw invalid_spec(std::string(tol_env) + " is not a number");
    return v;
}

}  // namespace detail

/// Parse argv.  Returns the config, or an exit status when parsing ended
/// the run (help, or a usage error reported on `err`).
inline std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                       std::ostream& err) {
    RunConfig c;
    try {
        c.tol = detail::default_tolerance();
    } catch (const framediag::error& e) {
        err << "framediag: " << e.what() << "\n";
        return exit_invalid;
    }

    CLI::App app{"Frame and cross-Gram diagnostics for finite vector sequences", "framediag"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    std::size_t dim = 0;
    std::string dims_text;
    std::string format = "json";
    std::string id;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", c.tol, std::string("Relative tolerance (default from ") + tol_env + " or 1e-10)");
        sub->add_option("--out", c.out, "Write the report to this path");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    };

    auto* classify = app.add_subcommand("classify", "Classify one sequence");
    classify->add_option("--input", c.input, "Sequence JSON file")->required();
    classify->add_option("--dim", dim, "Truncation N");
    common(classify);

    auto* cross = app.add_subcommand("cross-gram", "Analyse the cross-Gram matrix of two sequences");
    cross->add_option("--f", c.f_path, "Sequence f JSON file")->required();
    cross->add_option("--g", c.g_path, "Sequence g JSON file")->required();
    cross->add_option("--dim", dim, "Truncation N");
    common(cross);

    auto* dual = app.add_subcommand("dual-check", "Test the dual-pair conditions");
    dual->add_option("--f", c.f_path, "Sequence f JSON file")->required();
    dual->add_option("--g", c.g_path, "Sequence g JSON file")->required();
    dual->add_option("--dim", dim, "Truncation N");
    dual->add_option("--probes", c.probes, "Random probe vectors in addition to the basis");
    dual->add_option("--seed", c.seed, "Probe seed");
    common(dual);

    auto* example = app.add_subcommand("example", "Analyse a registered worked example");
    example->add_option("--id", id, "Example id (" + valid_example_ids() + ")")->required();
    example->add_option("--dim", dim, "Truncation N")->required();
    example->add_option("--probes", c.probes, "Random probe vectors for the duality check");
    example->add_option("--seed", c.seed, "Probe seed");
    common(example);

    auto* sweep = app.add_subcommand("sweep", "Track spectral quantities across truncations");
    sweep->add_option("--id", id, "Example id");
    sweep->add_option("--f", c.f_path, "Sequence f JSON file");
    sweep->add_option("--g", c.g_path, "Sequence g JSON file");
    sweep->add_option("--dims", dims_text, "Comma-separated truncations, strictly increasing")->required();
    common(sweep);

    auto* battery = app.add_subcommand("battery", "Run the seeded theorem battery");
    battery->add_option("--seed", c.seed, "Master seed");
    battery->add_option("--trials", c.trials, "Trials per check");
    battery->add_option("--dims", dims_text, "Dimension range lo..hi (default 2..8)");
    battery->add_option("--threads", c.threads, "Worker threads, 0 = all cores (results are identical)");
    common(battery);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (classify->parsed()) c.command = Command::classify;
        if (cross->parsed()) c.command = Command::cross_gram;
        if (dual->parsed()) c.command = Command::dual_check;
        if (example->parsed()) c.command = Command::example;
        if (sweep->parsed()) {
            c.command = Command::sweep;
            c.dims = detail::parse_dim_list(dims_text);
        }
        if (battery->parsed()) {
            c.command = Command::battery;
            if (!dims_text.empty()) c.dim_range = detail::parse_dim_range(dims_text);
        }
        if (dim != 0) c.dim = dim;
        c.example_id = id;
        c.format = format == "text" ? ReportFormat::text : ReportFormat::json;
        validate(c);
    } catch (const framediag::error& e) {
        err << "framediag: " << e.what() << "\n";
        return exit_invalid;
    }
    return c;
}

}  // namespace framediag::cli

#endif  // FRAMEDIAG_CLI_HPP
