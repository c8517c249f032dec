#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/lipschitz.hpp"
#include "dudleylab/measure.hpp"
#include "dudleylab/metrics.hpp"
#include "dudleylab/rng.hpp"

namespace dudleylab {

// Defaults used by the demo commands; printed in every emitted table so
// the artifacts are self-describing.
inline constexpr double kDefaultDelta = 0.25;    // tail threshold pi(d > delta)
inline constexpr double kDefaultFailFloor = 0.05; // "bounded away from zero" floor

// schedule_j = 2/(j+1) for 1-based j.
inline std::vector<double> default_schedule(int horizon) {
    if (horizon < 1) throw InputError("default_schedule: horizon must be >= 1");
    std::vector<double> s(horizon);
    for (int j = 1; j <= horizon; ++j) s[j - 1] = 2.0 / (j + 1);
    return s;
}

struct SequenceEntry {
    ProbabilityMeasure mu;
    ProbabilityMeasure nu;
};

// A pair of measure sequences, entry j on its own space. Keeping each
// entry on a small dedicated space lets supports escape to infinity, and
// the metrics only depend on the union of the two supports anyway.
class MeasureSequencePair {
public:
    explicit MeasureSequencePair(std::vector<SequenceEntry> entries)
        : entries_(std::move(entries)) {
        if (entries_.empty()) throw InputError("MeasureSequencePair: no entries");
        for (const auto& e : entries_)
            detail::require_same_space(e.mu.space(), e.nu.space(), "MeasureSequencePair");
    }

    int horizon() const { return static_cast<int>(entries_.size()); }
    const SequenceEntry& entry(int idx) const { return entries_.at(idx); }
    const std::vector<SequenceEntry>& entries() const { return entries_; }

private:
    std::vector<SequenceEntry> entries_;
};

// Entry j (1-based) is (delta_j, delta_{j + 1/j}) on the two-point
// real-line space {j, j + 1/j}: the escape-to-infinity pair whose bounded
// continuous witness keeps a unit gap while the distances vanish.
inline MeasureSequencePair gen_escape_pair(int horizon) {
    if (horizon < 1) throw InputError("gen_escape_pair: horizon must be >= 1");
    std::vector<SequenceEntry> entries;
    entries.reserve(horizon);
    for (int j = 1; j <= horizon; ++j) {
        const double x = static_cast<double>(j);
        SpacePtr space = from_real_points({x, x + 1.0 / j});
        entries.push_back({point_mass(space, 0), point_mass(space, 1)});
    }
    return MeasureSequencePair(std::move(entries));
}

// A finite stand-in for the full Ub(X) test class: finitely many real-line
// evaluators, each within a stated n*BLip scale bound (checked whenever a
// member is tabulated onto a space).
class TestFamily {
public:
    struct Member {
        std::string name;
        std::function<double(double)> eval;
    };

    TestFamily(std::vector<Member> members, double scale_bound)
        : members_(std::move(members)), scale_bound_(scale_bound) {
        if (members_.empty()) throw InputError("TestFamily: empty family");
        if (!(scale_bound_ >= 0.0)) throw InputError("TestFamily: bad scale bound");
    }

    int size() const { return static_cast<int>(members_.size()); }
    double scale_bound() const { return scale_bound_; }
    const std::vector<Member>& members() const { return members_; }

    std::vector<TabulatedFunction> tabulate(const SpacePtr& space) const {
        if (!space || !space->has_coords())
            throw InputError("TestFamily: space has no real-line coordinates");
        std::vector<TabulatedFunction> out;
        out.reserve(members_.size());
        for (const auto& m : members_) {
            std::vector<double> vals(space->size());
            for (int i = 0; i < space->size(); ++i) vals[i] = m.eval(space->coord(i));
            TabulatedFunction f(space, std::move(vals));
            if (blip_scale(f) > scale_bound_ + 1e-9)
                throw InputError("TestFamily: member '" + m.name + "' exceeds scale " +
                                 format_double(scale_bound_) + " on the given space");
            out.push_back(std::move(f));
        }
        return out;
    }

    // Eight scale-1 members: clipped ramps and unit tents on a small grid.
    static TestFamily default_tents() {
        std::vector<Member> m;
        for (double c : {0.0, 0.5, 1.0, 2.0}) {
            m.push_back({"ramp@" + format_double(c), [c](double t) {
                             return std::clamp(t - c, -1.0, 1.0);
                         }});
            m.push_back({"tent@" + format_double(c), [c](double t) {
                             return std::max(0.0, 1.0 - std::fabs(t - c));
                         }});
        }
        return TestFamily(std::move(m), 1.0);
    }

    static TestFamily zero() {
        return TestFamily({{"zero", [](double) { return 0.0; }}}, 1.0);
    }

private:
    std::vector<Member> members_;
    double scale_bound_;
};

enum class VerdictMode { Bl, UbWeak, CbWeakCounterexample, Prokhorov, InProbability };
enum class VerdictLabel { Approximates, Fails, Inconclusive };

inline const char* verdict_mode_name(VerdictMode m) {
    switch (m) {
    case VerdictMode::Bl: return "bl";
    case VerdictMode::UbWeak: return "ub_weak";
    case VerdictMode::CbWeakCounterexample: return "cb_weak_counterexample";
    case VerdictMode::Prokhorov: return "prokhorov";
    case VerdictMode::InProbability: return "in_probability";
    }
    return "?";
}

inline const char* verdict_label_name(VerdictLabel v) {
    switch (v) {
    case VerdictLabel::Approximates: return "approximates";
    case VerdictLabel::Fails: return "fails";
    case VerdictLabel::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Finite-horizon evidence record. `approximates` demands value_j <=
// schedule_j on the whole second half of the horizon; `fails` demands
// value_j >= fail_floor on at least half of all indices. Both conditions
// can hold at once for generous schedules; the approximation test is
// applied first. A verdict is a demonstration at horizon J, never a limit
// proof, and the note says so.
struct ApproximationVerdict {
    VerdictMode mode = VerdictMode::Bl;
    int horizon = 0;
    std::vector<double> values;
    std::vector<double> schedule;
    double fail_floor = kDefaultFailFloor;
    VerdictLabel verdict = VerdictLabel::Inconclusive;
    std::string note;
};

inline ApproximationVerdict make_verdict(VerdictMode mode, std::vector<double> values,
                                         std::vector<double> schedule,
                                         double fail_floor = kDefaultFailFloor) {
    const int J = static_cast<int>(values.size());
    if (J < 1) throw InputError("make_verdict: empty value sequence");
    if (static_cast<int>(schedule.size()) != J)
        throw InputError("make_verdict: schedule length must equal horizon");
    for (int i = 0; i < J; ++i) {
        if (!(schedule[i] > 0.0)) throw InputError("make_verdict: schedule must be positive");
        if (i > 0 && schedule[i] > schedule[i - 1])
            throw InputError("make_verdict: schedule must be decreasing");
    }
    if (!(fail_floor > 0.0)) throw InputError("make_verdict: fail floor must be positive");

    ApproximationVerdict v;
    v.mode = mode;
    v.horizon = J;
    v.values = std::move(values);
    v.schedule = std::move(schedule);
    v.fail_floor = fail_floor;

    bool approx = true;
    for (int idx = (J - 1) / 2; idx < J; ++idx)
        if (v.values[idx] > v.schedule[idx]) { approx = false; break; }
    int above = 0;
    for (double x : v.values)
        if (x >= fail_floor) ++above;

    if (approx)
        v.verdict = VerdictLabel::Approximates;
    else if (2 * above >= J)
        v.verdict = VerdictLabel::Fails;
    else
        v.verdict = VerdictLabel::Inconclusive;
    v.note = "finite-horizon demonstration at J=" + std::to_string(J) + ", not a limit proof";
    return v;
}

inline ApproximationVerdict verdict_bl(const MeasureSequencePair& pair,
                                       std::vector<double> schedule,
                                       double fail_floor = kDefaultFailFloor) {
    std::vector<double> values;
    values.reserve(pair.horizon());
    for (const auto& e : pair.entries()) values.push_back(bl_distance(e.mu, e.nu).value);
    return make_verdict(VerdictMode::Bl, std::move(values), std::move(schedule), fail_floor);
}

inline ApproximationVerdict verdict_bl(const MeasureSequencePair& pair) {
    return verdict_bl(pair, default_schedule(pair.horizon()));
}

// value_j = max over the family of |<mu_j - nu_j, f>|. A family of scale n
// stands in for the full Ub quantifier up to the regularization error, so
// the note records the bound used.
inline ApproximationVerdict verdict_ub_weak(const MeasureSequencePair& pair,
                                            const TestFamily& family,
                                            std::vector<double> schedule,
                                            double fail_floor = kDefaultFailFloor) {
    std::vector<double> values;
    values.reserve(pair.horizon());
    for (const auto& e : pair.entries()) {
        double gap = 0.0;
        for (const auto& f : family.tabulate(e.mu.space()))
            gap = std::max(gap, std::fabs(integrate(e.mu - e.nu, f)));
        values.push_back(gap);
    }
    ApproximationVerdict v = make_verdict(VerdictMode::UbWeak, std::move(values),
                                          std::move(schedule), fail_floor);
    v.note += "; family of " + std::to_string(family.size()) + " function(s) at scale bound " +
              format_double(family.scale_bound()) +
              " (scaled Lipschitz families are dense in Ub)";
    return v;
}

inline ApproximationVerdict verdict_ub_weak(const MeasureSequencePair& pair,
                                            const TestFamily& family) {
    return verdict_ub_weak(pair, family, default_schedule(pair.horizon()));
}

inline ApproximationVerdict verdict_prokhorov(const MeasureSequencePair& pair,
                                              std::vector<double> schedule,
                                              double fail_floor = kDefaultFailFloor) {
    std::vector<double> values;
    values.reserve(pair.horizon());
    for (const auto& e : pair.entries()) values.push_back(levy_prokhorov(e.mu, e.nu).value);
    return make_verdict(VerdictMode::Prokhorov, std::move(values), std::move(schedule),
                        fail_floor);
}

// --- Cb-weak counterexample -------------------------------------------

struct CbWeakReport {
    int horizon = 0;
    std::vector<double> bl_values;  // 1/j, vanishing
    std::vector<double> gap_values; // separating-function gaps, constantly 1
    ApproximationVerdict bl_verdict;
    ApproximationVerdict cb_verdict;
    std::string conclusion;
};

// The escape pair under two surrogates at once: BL distances vanish while
// a single bounded continuous function keeps a unit gap at every index.
inline CbWeakReport cb_weak_counterexample(int horizon) {
    MeasureSequencePair pair = gen_escape_pair(horizon);
    CbWeakReport rep;
    rep.horizon = horizon;
    for (const auto& e : pair.entries()) {
        rep.bl_values.push_back(bl_distance(e.mu, e.nu).value);
        const auto& X = *e.mu.space();
        double gap = 0.0;
        for (int i = 0; i < X.size(); ++i)
            gap += (e.mu[i] - e.nu[i]) * separating_sequence_function(X.coord(i));
        rep.gap_values.push_back(std::fabs(gap));
    }
    rep.bl_verdict = make_verdict(VerdictMode::Bl, rep.bl_values, default_schedule(horizon));
    rep.cb_verdict = make_verdict(VerdictMode::CbWeakCounterexample, rep.gap_values,
                                  default_schedule(horizon));
    rep.conclusion =
        "Cb-weak surrogate keeps gap 1 at every index (verdict: " +
        std::string(verdict_label_name(rep.cb_verdict.verdict)) +
        "), while the BL surrogate vanishes like 1/j (verdict: " +
        std::string(verdict_label_name(rep.bl_verdict.verdict)) +
        "): the Cb-weak uniformity violates coupled-sequence approximation, the BL one obeys it";
    return rep;
}

// --- coupled sampling (A1) ----------------------------------------------

struct A1Row {
    int j = 0; // 1-based index
    double bl = 0.0;
    double expected_cost = 0.0; // E_pi[min(d,2)]
    double exact_tail = 0.0;    // pi(d > delta)
    double empirical_tail = 0.0;
    double markov_bound = 0.0; // expected_cost / min(delta, 2)
    bool markov_ok = true;
};

struct A1Report {
    double delta = kDefaultDelta;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<A1Row> rows;
    bool markov_ok = true;
    ApproximationVerdict tail_verdict; // in-probability surrogate on exact tails
};

// Draws coupled samples (X_j, Y_j) from the optimal BL coupling of each
// entry and compares the empirical tail P(d > delta) with the exact one.
// The Markov bound pi(d > delta) <= E_pi[min(d,2)] / min(delta,2) is the
// mechanism that turns BL decay into in-probability decay.
inline A1Report check_a1_coupled_sample(const MeasureSequencePair& pair, double delta,
                                        std::uint64_t seed, int samples) {
    if (!(delta > 0.0)) throw InputError("check_a1_coupled_sample: delta must be positive");
    if (samples < 1) throw InputError("check_a1_coupled_sample: need at least one sample");
    SplitMix64 root(seed);

    A1Report rep;
    rep.delta = delta;
    rep.seed = seed;
    rep.samples = samples;
    std::vector<double> tails;
    for (int idx = 0; idx < pair.horizon(); ++idx) {
        const auto& e = pair.entry(idx);
        BlDistanceResult bl = bl_distance(e.mu, e.nu);
        const auto& X = *e.mu.space();
        const Matrix& plan = bl.coupling.plan();

        A1Row row;
        row.j = idx + 1;
        row.bl = bl.value;
        row.expected_cost = bl.transport_value;
        row.exact_tail = bl.coupling.tail_mass(delta);
        row.markov_bound = row.expected_cost / std::min(delta, 2.0);
        row.markov_ok = row.exact_tail <= row.markov_bound + 1e-12;

        double total = 0.0;
        for (const auto& r : plan)
            for (double p : r) total += p;
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(idx));
        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double u = rng.next_double() * total;
            double cum = 0.0;
            int ci = X.size() - 1, cj = X.size() - 1;
            for (int i = 0; i < X.size() && cum <= u; ++i)
                for (int j2 = 0; j2 < X.size(); ++j2) {
                    cum += plan[i][j2];
                    if (cum > u) {
                        ci = i;
                        cj = j2;
                        break;
                    }
                }
            if (X.dist(ci, cj) > delta) ++hits;
        }
        row.empirical_tail = static_cast<double>(hits) / samples;
        rep.markov_ok = rep.markov_ok && row.markov_ok;
        tails.push_back(row.exact_tail);
        rep.rows.push_back(row);
    }
    rep.tail_verdict = make_verdict(VerdictMode::InProbability, std::move(tails),
                                    default_schedule(pair.horizon()));
    return rep;
}

// --- pushforward contraction (A2) ----------------------------------------

struct A2Row {
    int j = 0;
    double lipschitz = 0.0; // L_j of phi_j
    double bl_source = 0.0;
    double bl_image = 0.0;
    double ratio = std::numeric_limits<double>::quiet_NaN(); // NaN when skipped
    double bound = 0.0; // max(1, L_j) + 1e-9
    bool ok = true;
};

struct A2Report {
    int interval = 0; // target box [-n, n]
    std::vector<A2Row> rows;
    bool ok = true;
};

// Verifies that pushing both sequences forward along uniformly continuous
// maps into [-n, n] contracts BL distances by at most max(1, L).
inline A2Report check_a2_pushforward(const MeasureSequencePair& pair,
                                     const std::vector<PointMap>& maps, int interval) {
    if (interval < 1) throw InputError("check_a2_pushforward: interval index must be >= 1");
    if (static_cast<int>(maps.size()) != pair.horizon())
        throw InputError("check_a2_pushforward: one map per entry required");

    A2Report rep;
    rep.interval = interval;
    for (int idx = 0; idx < pair.horizon(); ++idx) {
        const auto& e = pair.entry(idx);
        const PointMap& phi = maps[idx];
        detail::require_same_space(e.mu.space(), phi.source(), "check_a2_pushforward");
        if (!phi.target()->has_coords())
            throw InputError("check_a2_pushforward: target is not a real-line space");
        for (int i = 0; i < phi.source()->size(); ++i) {
            const double y = phi.target()->coord(phi.apply(i));
            if (std::fabs(y) > static_cast<double>(interval))
                throw InputError("check_a2_pushforward: image point " + format_double(y) +
                                 " outside [-" + std::to_string(interval) + ", " +
                                 std::to_string(interval) + "]");
        }

        A2Row row;
        row.j = idx + 1;
        row.lipschitz = lipschitz_constant_of_map(phi);
        row.bl_source = bl_distance(e.mu, e.nu).value;
        row.bl_image = bl_distance(pushforward(phi, e.mu), pushforward(phi, e.nu)).value;
        row.bound = std::max(1.0, row.lipschitz) + 1e-9;
        if (row.bl_source >= 1e-12) {
            row.ratio = row.bl_image / row.bl_source;
            row.ok = row.ratio <= row.bound;
        }
        rep.ok = rep.ok && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

// --- equivalence suite ----------------------------------------------------

struct EquivalenceRow {
    int j = 0;
    double bl = 0.0;
    double prokhorov = 0.0;
    double ubweak_gap = 0.0;
    double cbweak_gap = std::numeric_limits<double>::quiet_NaN(); // NaN: no coordinates
    double coupling_tail = 0.0;
    double expected_cost = 0.0;
    bool markov_ok = true;
};

struct EquivalenceTable {
    std::vector<EquivalenceRow> rows;
    ApproximationVerdict ub_weak;   // Corollary-style item (i)
    ApproximationVerdict bl;        // item (iii)
    ApproximationVerdict prokhorov; // the Levy-Prokhorov variant of (iii)
    ApproximationVerdict tails;     // in-probability variant of (iv)
    bool agree = false;
    VerdictLabel agreed = VerdictLabel::Inconclusive;
    bool markov_ok = true;
    std::string finding; // non-empty iff the surrogates disagree
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    double delta = kDefaultDelta;
    double fail_floor = kDefaultFailFloor;
};

// Runs all four sequence surrogates on one pair and checks that their
// verdicts coincide. A disagreement is reported as a finding in the
// result, never reconciled. The fitted exponent of prokhorov against bl
// (log-log least squares) is informational only.
inline EquivalenceTable equivalence_suite(const MeasureSequencePair& pair,
                                          const TestFamily& family,
                                          std::vector<double> schedule, double delta,
                                          double fail_floor = kDefaultFailFloor) {
    if (!(delta > 0.0)) throw InputError("equivalence_suite: delta must be positive");
    const int J = pair.horizon();
    if (static_cast<int>(schedule.size()) != J)
        throw InputError("equivalence_suite: schedule length must equal horizon");

    EquivalenceTable table;
    table.delta = delta;
    table.fail_floor = fail_floor;
    std::vector<double> bl_vals, rho_vals, ub_vals, tail_vals;
    for (int idx = 0; idx < J; ++idx) {
        const auto& e = pair.entry(idx);
        EquivalenceRow row;
        row.j = idx + 1;

        BlDistanceResult bl = bl_distance(e.mu, e.nu);
        row.bl = bl.value;
        row.expected_cost = bl.transport_value;
        row.coupling_tail = bl.coupling.tail_mass(delta);
        row.markov_ok = row.coupling_tail <= row.expected_cost / std::min(delta, 2.0) + 1e-12;
        row.prokhorov = levy_prokhorov(e.mu, e.nu).value;
        for (const auto& f : family.tabulate(e.mu.space()))
            row.ubweak_gap = std::max(row.ubweak_gap, std::fabs(integrate(e.mu - e.nu, f)));
        if (e.mu.space()->has_coords()) {
            double g = 0.0;
            for (int i = 0; i < e.mu.size(); ++i)
                g += (e.mu[i] - e.nu[i]) * separating_sequence_function(e.mu.space()->coord(i));
            row.cbweak_gap = std::fabs(g);
        }

        table.markov_ok = table.markov_ok && row.markov_ok;
        bl_vals.push_back(row.bl);
        rho_vals.push_back(row.prokhorov);
        ub_vals.push_back(row.ubweak_gap);
        tail_vals.push_back(row.coupling_tail);
        table.rows.push_back(row);
    }

    table.ub_weak = make_verdict(VerdictMode::UbWeak, ub_vals, schedule, fail_floor);
    table.bl = make_verdict(VerdictMode::Bl, bl_vals, schedule, fail_floor);
    table.prokhorov = make_verdict(VerdictMode::Prokhorov, rho_vals, schedule, fail_floor);
    table.tails = make_verdict(VerdictMode::InProbability, tail_vals, std::move(schedule),
                               fail_floor);

    const VerdictLabel labels[4] = {table.ub_weak.verdict, table.bl.verdict,
                                    table.prokhorov.verdict, table.tails.verdict};
    table.agree = labels[0] == labels[1] && labels[1] == labels[2] && labels[2] == labels[3];
    if (table.agree) {
        table.agreed = labels[0];
    } else {
        table.finding = std::string("surrogates disagree: ub_weak=") +
                        verdict_label_name(labels[0]) + " bl=" + verdict_label_name(labels[1]) +
                        " prokhorov=" + verdict_label_name(labels[2]) +
                        " in_probability=" + verdict_label_name(labels[3]);
    }

    // log(rho) ~ alpha log(bl) over indices where both are meaningful.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (int i = 0; i < J; ++i)
        if (bl_vals[i] > 1e-12 && rho_vals[i] > 1e-12 && bl_vals[i] < 1.0) {
            const double x = std::log(bl_vals[i]);
            const double y = std::log(rho_vals[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++k;
        }
    if (k >= 3 && sxx * k - sx * sx > 1e-12)
        table.fitted_exponent = (sxy * k - sx * sy) / (sxx * k - sx * sx);
    return table;
}

inline EquivalenceTable equivalence_suite(const MeasureSequencePair& pair) {
    return equivalence_suite(pair, TestFamily::default_tents(),
                             default_schedule(pair.horizon()), kDefaultDelta);
}

// --- verdict corpus --------------------------------------------------------

struct CorpusPair {
    std::string name;
    bool should_approximate = true;
    MeasureSequencePair pair;
};

// Twenty seeded sequence pairs: ten engineered to approximate (shrinking
// perturbations of several shapes) and ten engineered to fail (persistent
// separation). All supports stay inside the window covered by the default
// test family so every surrogate can see the separation.
inline std::vector<CorpusPair> gen_verdict_corpus(int horizon, std::uint64_t seed) {
    if (horizon < 9)
        throw InputError("gen_verdict_corpus: horizon must be >= 9 so that tail "
                         "surrogates stabilize inside the second half");
    SplitMix64 rng = SplitMix64(seed).split(0xC0FFEE);
    std::vector<CorpusPair> corpus;

    auto push = [&](std::string name, bool approx, std::vector<SequenceEntry> entries) {
        corpus.push_back({std::move(name), approx, MeasureSequencePair(std::move(entries))});
    };

    // Approximating designs.
    corpus.push_back({"escape", true, gen_escape_pair(horizon)});
    for (int variant = 0; variant < 2; ++variant) {
        const double c = rng.uniform(0.0, 2.0);
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            SpacePtr s = from_real_points({c + j, c + j + 1.0 / j});
            es.push_back({point_mass(s, 0), point_mass(s, 1)});
        }
        push("escape_shifted_" + std::to_string(variant), true, std::move(es));
    }
    for (int variant = 0; variant < 2; ++variant) {
        const double h0 = rng.uniform(0.1, 0.4);
        SpacePtr s = from_real_points({0.0, 1.0});
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            const double h = h0 / (j + 1);
            es.push_back({ProbabilityMeasure(s, {0.5, 0.5}),
                          ProbabilityMeasure(s, {0.5 + h, 0.5 - h})});
        }
        push("mass_transfer_" + std::to_string(variant), true, std::move(es));
    }
    for (int variant = 0; variant < 2; ++variant) {
        const double r = rng.uniform(0.3, 0.8);
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            const double step = r / (j + 1);
            SpacePtr s = from_real_points({0.0, step, 2.0 * step});
            es.push_back({point_mass(s, 0),
                          ProbabilityMeasure(s, {1.0 / 3, 1.0 / 3, 1.0 / 3})});
        }
        push("spread_shrink_" + std::to_string(variant), true, std::move(es));
    }
    {
        SpacePtr s = from_real_points({rng.uniform(-1.0, 0.0), rng.uniform(0.2, 1.0),
                                       rng.uniform(1.2, 2.0)});
        double a = rng.uniform(0.1, 0.5), b = rng.uniform(0.1, 0.4);
        ProbabilityMeasure m(s, {a, b, 1.0 - a - b});
        std::vector<SequenceEntry> es(static_cast<std::size_t>(horizon), {m, m});
        push("identical", true, std::move(es));
    }
    {
        const double p = rng.uniform(0.2, 0.8);
        const double eta0 = rng.uniform(0.1, 0.4);
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            const double eta = eta0 / (j + 1);
            SpacePtr s = from_real_points({0.0, eta, 1.0, 1.0 + eta});
            es.push_back({ProbabilityMeasure(s, {p, 0.0, 1.0 - p, 0.0}),
                          ProbabilityMeasure(s, {0.0, p, 0.0, 1.0 - p})});
        }
        push("two_sided_shift", true, std::move(es));
    }
    {
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            SpacePtr s = from_real_points({static_cast<double>(j),
                                           j + 1.0 / (static_cast<double>(j) * j)});
            es.push_back({point_mass(s, 0), point_mass(s, 1)});
        }
        push("escape_fast", true, std::move(es));
    }

    // Failing designs.
    {
        SpacePtr s = from_real_points({0.0, 1.0});
        std::vector<SequenceEntry> es(static_cast<std::size_t>(horizon),
                                      {point_mass(s, 0), point_mass(s, 1)});
        push("unit_separation", false, std::move(es));
    }
    for (int variant = 0; variant < 3; ++variant) {
        const double c = rng.uniform(-0.5, 1.0);
        const double sep = rng.uniform(0.5, 1.5);
        SpacePtr s = from_real_points({c, c + sep});
        std::vector<SequenceEntry> es(static_cast<std::size_t>(horizon),
                                      {point_mass(s, 0), point_mass(s, 1)});
        push("constant_separation_" + std::to_string(variant), false, std::move(es));
    }
    {
        SpacePtr s = from_real_points({0.0, 1.0});
        std::vector<SequenceEntry> es(
            static_cast<std::size_t>(horizon),
            {ProbabilityMeasure(s, {0.5, 0.5}), point_mass(s, 0)});
        push("mixture_vs_atom", false, std::move(es));
    }
    for (int variant = 0; variant < 3; ++variant) {
        const double p = rng.uniform(0.65, 0.9);
        const double q = p - rng.uniform(0.3, 0.5);
        SpacePtr s = from_real_points({0.0, 1.0});
        std::vector<SequenceEntry> es(
            static_cast<std::size_t>(horizon),
            {ProbabilityMeasure(s, {p, 1.0 - p}), ProbabilityMeasure(s, {q, 1.0 - q})});
        push("mixture_gap_" + std::to_string(variant), false, std::move(es));
    }
    for (int variant = 0; variant < 2; ++variant) {
        const double s1 = rng.uniform(0.5, 0.9);
        const double s2 = rng.uniform(0.9, 1.4);
        std::vector<SequenceEntry> es;
        for (int j = 1; j <= horizon; ++j) {
            const double sep = (j % 2 == 0) ? s1 : s2;
            SpacePtr s = from_real_points({0.0, sep});
            es.push_back({point_mass(s, 0), point_mass(s, 1)});
        }
        push("alternating_separation_" + std::to_string(variant), false, std::move(es));
    }
    return corpus;
}

} // namespace dudleylab
