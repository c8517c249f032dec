#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dudleylab/approx_lab.hpp"
#include "dudleylab/error.hpp"
#include "dudleylab/lipschitz.hpp"
#include "dudleylab/measure.hpp"
#include "dudleylab/metric_space.hpp"
#include "dudleylab/metrics.hpp"

namespace dudleylab {

// Structurally malformed input: wrong JSON shape, missing or mistyped
// fields. Distinct from InputError (well-formed data violating a domain
// invariant); the CLI maps SchemaError to exit 2 and InputError to exit 1.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// File-loaded matrices get 1e-12 of triangle slack for decimal rounding;
// real-line spaces are constructed exactly.
inline constexpr double kFileTriangleTol = 1e-12;

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline std::vector<double> number_array(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw SchemaError(std::string(what) + ": non-numeric entry");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace detail

// {"points": ["a", ...], "metric": {"type": "matrix", "d": [[...]]}}
// or {"points": [x1, ...], "metric": {"type": "real_line"}}.
inline SpacePtr space_from_json(const Json& j) {
    const Json& points = detail::require_field(j, "points", "space");
    const Json& metric = detail::require_field(j, "metric", "space");
    const Json& type = detail::require_field(metric, "type", "space.metric");
    if (!type.is_string()) throw SchemaError("space.metric: \"type\" must be a string");

    if (type == "real_line") {
        return from_real_points(detail::number_array(points, "space.points"));
    }
    if (type == "matrix") {
        if (!points.is_array()) throw SchemaError("space.points: expected an array");
        std::vector<std::string> labels;
        for (const auto& p : points) {
            if (!p.is_string()) throw SchemaError("space.points: matrix spaces use string labels");
            labels.push_back(p.get<std::string>());
        }
        const Json& d = detail::require_field(metric, "d", "space.metric");
        if (!d.is_array()) throw SchemaError("space.metric.d: expected a matrix");
        Matrix dist;
        for (const auto& row : d) dist.push_back(detail::number_array(row, "space.metric.d"));
        return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist),
                                              kFileTriangleTol);
    }
    throw SchemaError("space.metric: unknown type \"" + type.get<std::string>() + "\"");
}

inline Json space_to_json(const FiniteMetricSpace& s) {
    Json j;
    if (s.has_coords()) {
        j["points"] = s.coords();
        j["metric"] = {{"type", "real_line"}};
    } else {
        j["points"] = s.labels();
        j["metric"] = {{"type", "matrix"}, {"d", s.dist_matrix()}};
    }
    return j;
}

namespace detail {

// "space" is either an inline space object or a string path to a space
// file, resolved against base_dir.
inline SpacePtr resolve_space(const Json& j, const std::string& base_dir) {
    if (j.is_string()) {
        std::string path = j.get<std::string>();
        if (!path.empty() && path[0] != '/' && !base_dir.empty())
            path = base_dir + "/" + path;
        std::ifstream in(path);
        if (!in) throw InputError("cannot open space file: " + path);
        return space_from_json(Json::parse(in));
    }
    return space_from_json(j);
}

} // namespace detail

struct LoadedMeasure {
    SignedMeasure measure;
    std::optional<ProbabilityMeasure> prob; // set iff kind == "prob"

    const ProbabilityMeasure& require_prob(const char* what) const {
        if (!prob) throw InputError(std::string(what) + ": measure must have kind \"prob\"");
        return *prob;
    }
};

// {"space": <space or path>, "mass": [...], "kind": "prob"|"signed"}.
inline LoadedMeasure measure_from_json(const Json& j, const std::string& base_dir = "") {
    SpacePtr space = detail::resolve_space(detail::require_field(j, "space", "measure"),
                                           base_dir);
    std::vector<double> mass =
        detail::number_array(detail::require_field(j, "mass", "measure"), "measure.mass");
    const Json& kind = detail::require_field(j, "kind", "measure");
    if (kind == "prob") {
        ProbabilityMeasure p(space, mass);
        return {p.as_signed(), std::move(p)};
    }
    if (kind == "signed") return {SignedMeasure(space, std::move(mass)), std::nullopt};
    throw SchemaError("measure: kind must be \"prob\" or \"signed\"");
}

inline Json measure_to_json(const SignedMeasure& mu, bool is_prob) {
    Json j;
    j["space"] = space_to_json(*mu.space());
    j["mass"] = mu.mass();
    j["kind"] = is_prob ? "prob" : "signed";
    return j;
}

// {"space": <space or path>, "values": [...]}.
inline TabulatedFunction function_from_json(const Json& j, const std::string& base_dir = "") {
    SpacePtr space = detail::resolve_space(detail::require_field(j, "space", "function"),
                                           base_dir);
    std::vector<double> values =
        detail::number_array(detail::require_field(j, "values", "function"), "function.values");
    return TabulatedFunction(std::move(space), std::move(values));
}

inline Json function_to_json(const TabulatedFunction& f) {
    Json j;
    j["space"] = space_to_json(*f.space());
    j["values"] = f.values();
    return j;
}

inline Json verdict_to_json(const ApproximationVerdict& v) {
    Json j;
    j["mode"] = verdict_mode_name(v.mode);
    j["horizon"] = v.horizon;
    j["values"] = v.values;
    j["schedule"] = v.schedule;
    j["fail_floor"] = v.fail_floor;
    j["verdict"] = verdict_label_name(v.verdict);
    j["note"] = v.note;
    return j;
}

// The suite CSV: parameter comment lines, then exactly the columns
//   j,bl,prokhorov,ubweak_gap,cbweak_gap,coupling_tail,verdict
// The verdict column carries the agreed verdict of the four surrogates
// (or "disagreement", detailed in the finding).
inline void write_equivalence_csv(std::ostream& out, const EquivalenceTable& table,
                                  const std::vector<std::string>& params) {
    for (const auto& p : params) out << "# " << p << "\n";
    out << "j,bl,prokhorov,ubweak_gap,cbweak_gap,coupling_tail,verdict\n";
    const std::string verdict =
        table.agree ? verdict_label_name(table.agreed) : "disagreement";
    for (const auto& r : table.rows) {
        out << r.j << ',' << format_double(r.bl) << ',' << format_double(r.prokhorov) << ','
            << format_double(r.ubweak_gap) << ',' << format_double(r.cbweak_gap) << ','
            << format_double(r.coupling_tail) << ',' << verdict << "\n";
    }
}

inline Json equivalence_to_json(const EquivalenceTable& t) {
    Json j;
    j["delta"] = t.delta;
    j["fail_floor"] = t.fail_floor;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json row;
        row["j"] = r.j;
        row["bl"] = r.bl;
        row["prokhorov"] = r.prokhorov;
        row["ubweak_gap"] = r.ubweak_gap;
        row["cbweak_gap"] = r.cbweak_gap;
        row["coupling_tail"] = r.coupling_tail;
        row["expected_cost"] = r.expected_cost;
        row["markov_ok"] = r.markov_ok;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["verdicts"] = {{"ub_weak", verdict_label_name(t.ub_weak.verdict)},
                     {"bl", verdict_label_name(t.bl.verdict)},
                     {"prokhorov", verdict_label_name(t.prokhorov.verdict)},
                     {"in_probability", verdict_label_name(t.tails.verdict)}};
    j["agree"] = t.agree;
    if (t.agree)
        j["agreed_verdict"] = verdict_label_name(t.agreed);
    else
        j["finding"] = t.finding;
    j["markov_ok"] = t.markov_ok;
    if (std::isfinite(t.fitted_exponent))
        j["fitted_exponent_prokhorov_vs_bl"] = t.fitted_exponent;
    return j;
}

inline Json a1_report_to_json(const A1Report& rep) {
    Json j;
    j["delta"] = rep.delta;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"j", r.j},
                        {"bl", r.bl},
                        {"expected_cost", r.expected_cost},
                        {"exact_tail", r.exact_tail},
                        {"empirical_tail", r.empirical_tail},
                        {"markov_bound", r.markov_bound},
                        {"markov_ok", r.markov_ok}});
    }
    j["rows"] = std::move(rows);
    j["markov_ok"] = rep.markov_ok;
    j["tail_verdict"] = verdict_to_json(rep.tail_verdict);
    return j;
}

inline Json a2_report_to_json(const A2Report& rep) {
    Json j;
    j["interval"] = rep.interval;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row{{"j", r.j},
                 {"lipschitz", r.lipschitz},
                 {"bl_source", r.bl_source},
                 {"bl_image", r.bl_image},
                 {"bound", r.bound},
                 {"ok", r.ok}};
        if (std::isfinite(r.ratio))
            row["ratio"] = r.ratio;
        else
            row["ratio"] = nullptr; // skipped: source distance below 1e-12
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["ok"] = rep.ok;
    return j;
}

inline Json cb_weak_report_to_json(const CbWeakReport& rep) {
    Json j;
    j["horizon"] = rep.horizon;
    j["bl_values"] = rep.bl_values;
    j["cbweak_gaps"] = rep.gap_values;
    j["bl_verdict"] = verdict_label_name(rep.bl_verdict.verdict);
    j["cbweak_verdict"] = verdict_label_name(rep.cb_verdict.verdict);
    j["conclusion"] = rep.conclusion;
    return j;
}

} // namespace dudleylab
