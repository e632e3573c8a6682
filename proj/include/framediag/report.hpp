#ifndef FRAMEDIAG_REPORT_HPP
#define FRAMEDIAG_REPORT_HPP

// Report serialization (schemas/report.schema.json).  JSON objects use
// sorted keys, so identical inputs give byte-identical documents.

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "framediag/battery.hpp"
#include "framediag/block_spectrum.hpp"
#include "framediag/diagnostics.hpp"
#include "framediag/frame_ops.hpp"
#include "framediag/json_io.hpp"
#include "framediag/sweep.hpp"
#include "framediag/version.hpp"

namespace framediag {

enum class ReportFormat { json, text };

namespace detail {
/// Non-finite values become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }
}  // namespace detail

inline json to_json(const FrameBounds& b) {
    return {{"lower", detail::number(b.lower)},
            {"upper", detail::number(b.upper)},
            {"spans_ambient", b.spans_ambient},
            {"tol", b.tol}};
}

inline json to_json(const SequenceClassification& c) {
    return {{"bessel_bound", detail::number(c.bessel_bound)},
            {"frame", to_json(c.frame)},
            {"complete", c.complete},
            {"riesz", c.riesz},
            {"nba_sup", detail::number(c.nba_sup)},
            {"nbb_inf", detail::number(c.nbb_inf)},
            {"tol", c.tol}};
}

inline json to_json(const CrossGramReport& r) {
    return {{"rows", r.rows},
            {"cols", r.cols},
            {"op_norm", detail::number(r.op_norm)},
            {"sigma_min", detail::number(r.sigma_min)},
            {"hs", detail::number(r.hs)},
            {"rank", r.rank},
            {"invertible", r.invertible},
            {"hermitian_defect", detail::number(r.hermitian_defect)},
            {"psd", r.psd},
            {"eigen_min", detail::number(r.eigen_min)},
            {"eigen_max", detail::number(r.eigen_max)},
            {"idempotency_defect", detail::number(r.idempotency_defect)},
            {"identity_distance", detail::number(r.identity_distance)},
            {"tol", r.tol}};
}

inline json to_json(const SpectralSummary& s) {
    return {{"rows", s.rows},
            {"cols", s.cols},
            {"op_norm", detail::number(s.op_norm)},
            {"sigma_min", detail::number(s.sigma_min)},
            {"hs", detail::number(s.hs)},
            {"rank", s.rank},
            {"blocks", s.blocks},
            {"largest_block", s.largest_block}};
}

inline json to_json(const PairingBounds& b) {
    return {{"lower", detail::number(b.lower)},
            {"upper", detail::number(b.upper)},
            {"is_dual_pair", b.is_dual_pair},
            {"certainly_not_dual", b.certainly_not_dual},
            {"tol", b.tol}};
}

inline json to_json(const DualityReport& d) {
    return {{"reconstruction_residual_1", detail::number(d.reconstruction_residual_1)},
            {"reconstruction_residual_2", detail::number(d.reconstruction_residual_2)},
            {"pairing_residual_3", detail::number(d.pairing_residual_3)},
            {"is_dual_pair", d.is_dual_pair},
            {"probes", d.probes},
            {"tol", d.tol}};
}

inline json to_json(const PropertyReport& p) {
    json checks = json::array();
    for (const auto& c : p.checks) {
        json trials = json::array();
        for (const auto& t : c.trials) {
            trials.push_back({{"trial", t.trial},
                              {"dim", t.dim},
                              {"passed", t.passed},
                              {"margin", detail::number(t.margin)},
                              {"note", t.note}});
        }
        checks.push_back({{"id", c.id},
                          {"name", c.name},
                          {"passed", c.passed},
                          {"failed", c.failed},
                          {"worst_margin", detail::number(c.worst_margin)},
                          {"trials", trials}});
    }
    return {{"seed", p.seed},
            {"trials", p.trials},
            {"dims", {{"lo", p.dims.lo}, {"hi", p.dims.hi}}},
            {"tol", p.tol},
            {"all_passed", p.all_passed()},
            {"checks", checks}};
}

inline json to_json(const ConvergenceTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"n", r.n},
                        {"dim", r.dim},
                        {"rows", r.rows},
                        {"cols", r.cols},
                        {"op_norm", detail::number(r.op_norm)},
                        {"sigma_min", detail::number(r.sigma_min)},
                        {"hs", detail::number(r.hs)},
                        {"hs_squared", detail::number(r.hs_squared)},
                        {"bessel_f", detail::number(r.bessel_f)},
                        {"bessel_g", detail::number(r.bessel_g)}});
    }
    return {{"rows", rows},
            {"flags",
             {{"bessel_f_growing", t.flags.bessel_f_growing},
              {"bessel_g_growing", t.flags.bessel_g_growing},
              {"op_norm_stabilizing", t.flags.op_norm_stabilizing},
              {"hs_stabilizing", t.flags.hs_stabilizing}}},
            {"tol", t.tol}};
}

/// Wrap a result with the tool identity and the configuration echo.
inline json report_envelope(const std::string& command, json config, json result) {
    return {{"tool", {{"name", tool_name}, {"version", version}}},
            {"command", command},
            {"config", std::move(config)},
            {"result", std::move(result)}};
}

namespace detail {
inline void render_text(std::ostringstream& out, const json& j, const std::string& indent) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            render_text(out, value, indent + "  ");
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            out << indent << key << ": " << value.size() << " entries\n";
            std::size_t i = 0;
            for (const auto& item : value) {
                if (item.contains("trial")) continue;
                out << indent << "  [" << i++ << "]\n";
                render_text(out, item, indent + "    ");
            }
        } else if (value.is_number_float()) {
            out << indent << key << ": " << std::setprecision(12) << value.get<double>() << "\n";
        } else {
            out << indent << key << ": " << value.dump() << "\n";
        }
    }
}
}  // namespace detail

/// JSON (two-space indented, trailing newline) or a plain-text summary.
inline std::string emit_report(const json& report, ReportFormat format) {
    if (format == ReportFormat::json) return report.dump(2) + "\n";
    std::ostringstream out;
    detail::render_text(out, report, "");
    return out.str();
}

}  // namespace framediag

#endif  // FRAMEDIAG_REPORT_HPP
