// dudleylab command line: validate inputs, compute distances and couplings,
// regularize functions, and run the sequence demos with CSV/JSON output.
//
// Exit codes: 0 success, 1 domain/invariant failure, 2 parse failure.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dudleylab/approx_lab.hpp"
#include "dudleylab/io.hpp"
#include "dudleylab/lipschitz.hpp"
#include "dudleylab/measure.hpp"
#include "dudleylab/metrics.hpp"
#include "dudleylab/solvers/simplex.hpp"

namespace dl = dudleylab;
using dl::Json;

namespace {

std::string dirname_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dl::InputError("cannot open file: " + path);
    return Json::parse(in);
}

dl::ProbabilityMeasure load_prob(const std::string& path) {
    return dl::measure_from_json(parse_file(path), dirname_of(path)).require_prob(path.c_str());
}

void require_common_space(const dl::ProbabilityMeasure& mu, const dl::ProbabilityMeasure& nu) {
    if (!dl::spaces_equal(mu.space(), nu.space()))
        throw dl::InputError("measures live on different spaces");
}

// Total variation via an LP over the sup-norm box only (no Lipschitz
// rows): an oracle for --crosscheck that shares nothing with the direct
// mass-summation route.
double tv_lp_oracle(const dl::SignedMeasure& sigma) {
    dl::LinearProgram lp(sigma.size());
    for (int i = 0; i < sigma.size(); ++i) {
        lp.objective[i] = sigma[i];
        lp.lower[i] = -1.0;
        lp.upper[i] = 1.0;
    }
    return dl::solve_lp(lp).value;
}

int cmd_validate(const std::string& path) {
    const Json j = parse_file(path);
    Json out;
    if (j.is_object() && j.contains("metric")) {
        out["kind"] = "space";
        // Matrix spaces get a full axiom report with witnesses.
        const Json& metric = j.at("metric");
        if (metric.is_object() && metric.contains("type") && metric.at("type") == "matrix") {
            dl::Matrix d;
            const Json& rows = dl::detail::require_field(metric, "d", "space.metric");
            if (!rows.is_array()) throw dl::SchemaError("space.metric.d: expected a matrix");
            for (const auto& row : rows)
                d.push_back(dl::detail::number_array(row, "space.metric.d"));
            dl::ValidationReport report = dl::validate_metric(d, dl::kFileTriangleTol);
            if (!report.ok()) {
                out["ok"] = false;
                Json witnesses = Json::array();
                for (const auto& v : report.violations) witnesses.push_back(v.describe());
                out["violations"] = std::move(witnesses);
                out["total_violations"] = report.total;
                std::cout << out.dump() << "\n";
                return 1;
            }
        }
        dl::SpacePtr s = dl::space_from_json(j);
        out["ok"] = true;
        out["points"] = s->size();
    } else if (j.is_object() && j.contains("mass")) {
        dl::LoadedMeasure m = dl::measure_from_json(j, dirname_of(path));
        out["kind"] = m.prob ? "prob_measure" : "signed_measure";
        out["ok"] = true;
        out["points"] = m.measure.size();
        out["total_mass"] = m.measure.total();
    } else if (j.is_object() && j.contains("values")) {
        dl::TabulatedFunction f = dl::function_from_json(j, dirname_of(path));
        out["kind"] = "function";
        out["ok"] = true;
        out["points"] = f.size();
        out["blip_scale"] = dl::blip_scale(f);
    } else {
        throw dl::SchemaError("file is neither a space, a measure, nor a function");
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_dist(const std::string& metric, const std::string& mu_path, const std::string& nu_path,
             bool want_coupling, bool want_witness, bool crosscheck) {
    const dl::ProbabilityMeasure mu = load_prob(mu_path);
    const dl::ProbabilityMeasure nu = load_prob(nu_path);
    require_common_space(mu, nu);

    Json out;
    double gap = 0.0;
    if (metric == "bl") {
        dl::BlDistanceResult r = dl::bl_distance(mu, nu);
        out["metric"] = "bl";
        out["value"] = r.value;
        if (want_witness) out["witness"] = r.witness.values();
        if (want_coupling) out["coupling"] = r.coupling.plan();
        if (crosscheck) {
            gap = std::fabs(r.value - r.transport_value);
            out["crosscheck"] = {{"oracle", "truncated-cost transport (network simplex)"},
                                 {"value", r.transport_value},
                                 {"gap", gap},
                                 {"agree", gap <= 1e-8}};
        }
    } else if (metric == "prokhorov") {
        dl::ProkhorovResult r = dl::levy_prokhorov(mu, nu);
        out["metric"] = "lp";
        out["value"] = r.value;
        out["threshold"] = r.threshold;
        if (want_coupling) out["coupling"] = r.coupling.plan();
        if (crosscheck) {
            const double oracle = dl::prokhorov_bruteforce(mu, nu);
            gap = std::fabs(r.value - oracle);
            out["crosscheck"] = {{"oracle", "subset brute force"},
                                 {"value", oracle},
                                 {"gap", gap},
                                 {"agree", gap <= 1e-8}};
        }
    } else if (metric == "tv") {
        const dl::SignedMeasure sigma = mu - nu;
        const double value = dl::total_variation_norm(sigma);
        out["metric"] = "tv";
        out["value"] = value;
        if (crosscheck) {
            const double oracle = tv_lp_oracle(sigma);
            gap = std::fabs(value - oracle);
            out["crosscheck"] = {{"oracle", "sup-norm box LP"},
                                 {"value", oracle},
                                 {"gap", gap},
                                 {"agree", gap <= 1e-8}};
        }
    } else {
        throw dl::InputError("unknown metric: " + metric);
    }
    std::cout << out.dump() << "\n";
    if (crosscheck && gap > 1e-8) {
        std::cerr << "crosscheck FAILED: primary and oracle differ by " << dl::format_double(gap)
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_coupling(const std::string& kind, const std::string& mu_path,
                 const std::string& nu_path, std::optional<double> epsilon) {
    const dl::ProbabilityMeasure mu = load_prob(mu_path);
    const dl::ProbabilityMeasure nu = load_prob(nu_path);
    require_common_space(mu, nu);

    Json out;
    if (kind == "bl") {
        dl::BlDistanceResult r = dl::bl_distance(mu, nu);
        out["metric"] = "bl";
        out["value"] = r.value;
        out["expected_cost"] = r.transport_value;
        out["coupling"] = r.coupling.plan();
    } else if (kind == "prokhorov") {
        dl::ProkhorovResult r = dl::levy_prokhorov(mu, nu);
        out["metric"] = "lp";
        out["value"] = r.value;
        out["threshold"] = r.threshold;
        out["tail"] = r.coupling.tail_mass(r.threshold);
        out["coupling"] = r.coupling.plan();
    } else if (kind == "strassen") {
        if (!epsilon) throw dl::InputError("coupling strassen requires --epsilon");
        dl::StrassenResult r = dl::strassen_coupling(mu, nu, *epsilon);
        out["metric"] = "strassen";
        out["epsilon"] = *epsilon;
        out["overflow"] = r.overflow;
        out["coupling"] = r.coupling.plan();
    } else {
        throw dl::InputError("unknown coupling kind: " + kind);
    }
    std::cout << out.dump() << "\n";
    return 0;
}

struct DemoOptions {
    int horizon = 12;
    std::uint64_t seed = 0;
    int samples = 1000;
    double delta = dl::kDefaultDelta;
    std::string out_path;
    bool json = false;
};

void write_csv_or_die(const std::string& path, const dl::EquivalenceTable& table,
                      std::vector<std::string> params) {
    std::ofstream out(path);
    if (!out) throw dl::InputError("cannot write output file: " + path);
    dl::write_equivalence_csv(out, table, params);
    if (!out) throw dl::InputError("write failed: " + path);
}

std::vector<std::string> base_params(const std::string& name, const DemoOptions& opt) {
    return {"demo=" + name,
            "horizon=" + std::to_string(opt.horizon),
            "seed=" + std::to_string(opt.seed),
            "delta=" + dl::format_double(opt.delta),
            "fail_floor=" + dl::format_double(dl::kDefaultFailFloor),
            "schedule=2/(j+1)",
            "family=tents8(scale1)"};
}

std::string agreement_summary(const dl::EquivalenceTable& table) {
    if (table.agree)
        return "all surrogates agree: " + std::string(dl::verdict_label_name(table.agreed));
    return "FINDING: " + table.finding;
}

int cmd_demo(const std::string& name, const DemoOptions& opt) {
    const dl::MeasureSequencePair escape = dl::gen_escape_pair(opt.horizon);
    const dl::TestFamily family = dl::TestFamily::default_tents();
    const std::vector<double> schedule = dl::default_schedule(opt.horizon);

    if (name == "escape" || name == "equivalence") {
        dl::EquivalenceTable table =
            dl::equivalence_suite(escape, family, schedule, opt.delta);
        write_csv_or_die(opt.out_path, table, base_params(name, opt));
        std::cout << "demo " << name << ": horizon=" << opt.horizon << " "
                  << agreement_summary(table) << "; wrote " << opt.out_path << "\n";
        if (opt.json) std::cout << dl::equivalence_to_json(table).dump() << "\n";
        return 0;
    }
    if (name == "a1") {
        dl::A1Report rep =
            dl::check_a1_coupled_sample(escape, opt.delta, opt.seed, opt.samples);
        dl::EquivalenceTable table =
            dl::equivalence_suite(escape, family, schedule, opt.delta);
        auto params = base_params(name, opt);
        params.push_back("samples=" + std::to_string(opt.samples));
        write_csv_or_die(opt.out_path, table, params);
        double worst = 0.0;
        for (const auto& r : rep.rows)
            worst = std::max(worst, std::fabs(r.empirical_tail - r.exact_tail));
        std::cout << "demo a1: horizon=" << opt.horizon << " markov_bound="
                  << (rep.markov_ok ? "holds" : "VIOLATED")
                  << " max|empirical-exact|=" << dl::format_double(worst) << " tail_verdict="
                  << dl::verdict_label_name(rep.tail_verdict.verdict) << "; wrote "
                  << opt.out_path << "\n";
        if (opt.json) std::cout << dl::a1_report_to_json(rep).dump() << "\n";
        return 0;
    }
    if (name == "a2") {
        // Built-in map x -> x/2 into [-n, n] with n just covering the image.
        const int interval =
            static_cast<int>(std::ceil((opt.horizon + 1.0 / opt.horizon) / 2.0));
        std::vector<dl::PointMap> maps;
        std::vector<dl::SequenceEntry> image_entries;
        for (const auto& e : escape.entries()) {
            const auto& X = *e.mu.space();
            dl::SpacePtr target =
                dl::from_real_points({X.coord(0) / 2.0, X.coord(1) / 2.0});
            dl::PointMap phi(e.mu.space(), target, {0, 1});
            image_entries.push_back(
                {dl::pushforward(phi, e.mu), dl::pushforward(phi, e.nu)});
            maps.push_back(std::move(phi));
        }
        dl::A2Report rep = dl::check_a2_pushforward(escape, maps, interval);
        dl::MeasureSequencePair image_pair(std::move(image_entries));
        dl::EquivalenceTable table =
            dl::equivalence_suite(image_pair, family, schedule, opt.delta);
        auto params = base_params(name, opt);
        params.push_back("map=x/2");
        params.push_back("interval=" + std::to_string(interval));
        write_csv_or_die(opt.out_path, table, params);
        double worst = 0.0;
        for (const auto& r : rep.rows)
            if (std::isfinite(r.ratio)) worst = std::max(worst, r.ratio);
        std::cout << "demo a2: horizon=" << opt.horizon << " contraction="
                  << (rep.ok ? "holds" : "VIOLATED")
                  << " max_ratio=" << dl::format_double(worst) << "; wrote " << opt.out_path
                  << "\n";
        if (opt.json) std::cout << dl::a2_report_to_json(rep).dump() << "\n";
        return 0;
    }
    throw dl::InputError("unknown demo: " + name);
}

int cmd_regularize(const std::string& f_path, double epsilon) {
    dl::TabulatedFunction f = dl::function_from_json(parse_file(f_path), dirname_of(f_path));
    dl::RegularizationResult r = dl::regularize(f, epsilon);

    bool lower_ok = true, upper_ok = true;
    for (int i = 0; i < f.size(); ++i) {
        lower_ok = lower_ok && r.g[i] >= f[i] - epsilon - 1e-12;
        upper_ok = upper_ok && r.g[i] <= f[i] + 1e-12;
    }
    const bool scale_ok = dl::blip_scale(r.g) <= r.scale + 1e-12;

    Json out;
    out["g"] = r.g.values();
    out["n"] = r.scale;
    if (std::isinf(r.theta))
        out["theta"] = nullptr; // zero function: theta is +infinity
    else
        out["theta"] = r.theta;
    out["checks"] = {{"lower_ok", lower_ok}, {"upper_ok", upper_ok}, {"scale_ok", scale_ok}};
    std::cout << out.dump() << "\n";
    if (!(lower_ok && upper_ok && scale_ok))
        throw dl::InternalError("regularize: postcondition check failed");
    return 0;
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("DUDLEYLAB_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (...) {
        throw dl::InputError("DUDLEYLAB_SEED is not an unsigned integer");
    }
}

} // namespace

int run_app(int argc, char** argv) {
    CLI::App app{"distances, couplings and approximation demos for finitely supported "
                 "probability measures"};
    app.require_subcommand(1);

    std::string v_path;
    auto* validate = app.add_subcommand("validate", "validate a space/measure/function file");
    validate->add_option("path", v_path, "JSON file")->required();

    std::string d_metric, d_mu, d_nu;
    bool d_coupling = false, d_witness = false, d_crosscheck = false;
    auto* dist = app.add_subcommand("dist", "distance between two probability measures");
    dist->add_option("metric", d_metric, "bl | prokhorov | tv")->required();
    dist->add_option("mu", d_mu, "measure JSON file")->required();
    dist->add_option("nu", d_nu, "measure JSON file")->required();
    dist->add_flag("--coupling", d_coupling, "include the certifying coupling");
    dist->add_flag("--witness", d_witness, "include the optimal witness function (bl)");
    dist->add_flag("--crosscheck", d_crosscheck,
                   "also run the independent oracle; fail loudly on disagreement > 1e-8");

    std::string c_kind, c_mu, c_nu;
    double c_eps = -1.0;
    auto* coupling = app.add_subcommand("coupling", "certifying coupling between two measures");
    coupling->add_option("kind", c_kind, "bl | prokhorov | strassen")->required();
    coupling->add_option("mu", c_mu)->required();
    coupling->add_option("nu", c_nu)->required();
    auto* eps_opt = coupling->add_option("--epsilon", c_eps, "threshold for strassen");

    std::string demo_name;
    DemoOptions demo_opt;
    bool seed_given = false;
    auto* demo = app.add_subcommand("demo", "finite-horizon sequence demonstrations");
    demo->add_option("name", demo_name, "escape | equivalence | a1 | a2")->required();
    demo->add_option("--horizon", demo_opt.horizon, "sequence length J (default 12)");
    auto* seed_opt = demo->add_option("--seed", demo_opt.seed,
                                      "RNG seed (fallback: env DUDLEYLAB_SEED, then 0)");
    demo->add_option("--samples", demo_opt.samples, "coupled samples per index (a1)");
    demo->add_option("--delta", demo_opt.delta, "tail threshold (default 0.25)");
    demo->add_option("--out", demo_opt.out_path, "CSV output path (default demo_<name>.csv)");
    demo->add_flag("--json", demo_opt.json, "also print the full report as JSON");

    std::string r_path;
    double r_eps = 0.0;
    auto* regularize = app.add_subcommand("regularize", "Lipschitz regularization of a function");
    regularize->add_option("f", r_path, "function JSON file")->required();
    regularize->add_option("--epsilon", r_eps, "regularization slack")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(v_path);
        if (*dist) return cmd_dist(d_metric, d_mu, d_nu, d_coupling, d_witness, d_crosscheck);
        if (*coupling)
            return cmd_coupling(c_kind, c_mu, c_nu,
                                eps_opt->count() ? std::optional<double>(c_eps) : std::nullopt);
        if (*demo) {
            seed_given = seed_opt->count() > 0;
            if (!seed_given) demo_opt.seed = seed_from_env();
            if (demo_opt.out_path.empty()) demo_opt.out_path = "demo_" + demo_name + ".csv";
            return cmd_demo(demo_name, demo_opt);
        }
        if (*regularize) {
            if (!(r_eps > 0.0)) throw dl::InputError("regularize: epsilon must be positive");
            return cmd_regularize(r_path, r_eps);
        }
    } catch (const dl::SchemaError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n"; // message carries the byte position
        return 2;
    } catch (const dl::InternalError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return 1;
    }
}
