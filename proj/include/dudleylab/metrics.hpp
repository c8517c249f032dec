#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/lipschitz.hpp"
#include "dudleylab/measure.hpp"
#include "dudleylab/metric_space.hpp"
#include "dudleylab/solvers/max_flow.hpp"
#include "dudleylab/solvers/simplex.hpp"
#include "dudleylab/solvers/transport.hpp"

namespace dudleylab {

struct BlNormResult {
    double value = 0.0;
    TabulatedFunction witness;
};

// ||mu||_d = max <mu, f> over |f| <= 1, |f(x)-f(y)| <= d(x,y), as an LP.
// The witness is the optimal vertex under Bland's deterministic pivoting.
inline BlNormResult bl_norm(const SignedMeasure& mu) {
    const auto& X = *mu.space();
    const int n = X.size();
    LinearProgram lp(n);
    for (int i = 0; i < n; ++i) {
        lp.objective[i] = mu[i];
        lp.lower[i] = -1.0;
        lp.upper[i] = 1.0;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = X.dist(i, j);
            if (d >= 2.0) continue; // implied by the sup-norm box
            std::vector<double> row(n, 0.0);
            row[i] = 1.0;
            row[j] = -1.0;
            lp.add_constraint(row, Relation::LessEq, d);
            row[i] = -1.0;
            row[j] = 1.0;
            lp.add_constraint(std::move(row), Relation::LessEq, d);
        }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("bl_norm: LP did not reach an optimum");

    TabulatedFunction witness(mu.space(), sol.x);
    if (blip_scale(witness) > 1.0 + 1e-9)
        throw SolverError("bl_norm: witness left BLip(d): scale " +
                          format_double(blip_scale(witness)));
    double value = integrate(mu, witness);
    if (value < 0.0) {
        if (value < -1e-9) throw SolverError("bl_norm: negative optimum " + format_double(value));
        value = 0.0;
    }
    return {value, std::move(witness)};
}

namespace detail {

// Computing symmetric metrics on a canonical argument order makes
// dist(mu, nu) and dist(nu, mu) bit-identical, not merely close.
inline bool canonical_order(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    return !std::lexicographical_compare(nu.mass().begin(), nu.mass().end(),
                                         mu.mass().begin(), mu.mass().end());
}

// Extends a partial transport (row sums <= mu, col sums <= nu) to a full
// coupling by northwest-corner filling of the residual marginals.
inline Matrix complete_to_coupling(Matrix plan, const ProbabilityMeasure& mu,
                                   const ProbabilityMeasure& nu) {
    const int m = mu.size(), n = nu.size();
    std::vector<double> r(m, 0.0), c(n, 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += plan[i][j];
        r[i] = std::max(0.0, mu[i] - s);
    }
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += plan[i][j];
        c[j] = std::max(0.0, nu[j] - s);
    }
    int i = 0, j = 0;
    while (i < m && j < n) {
        const double q = std::min(r[i], c[j]);
        plan[i][j] += q;
        r[i] -= q;
        c[j] -= q;
        if (r[i] <= 1e-15)
            ++i;
        else if (c[j] <= 1e-15)
            ++j;
        else
            ++i;
    }
    return plan;
}

} // namespace detail

struct BlDistanceResult {
    double value = 0.0;       // primal LP value of ||mu - nu||_d
    double transport_value = 0.0; // E_pi[min(d,2)] for the returned coupling
    Coupling coupling;
    TabulatedFunction witness;
};

// ||mu - nu||_d computed two independent ways: the primal LP over BLip(d)
// and minimum-cost transport with cost min(d, 2) (network simplex). The
// reported value is the LP one; the coupling certifies the transport side.
// A gap above 1e-6 signals a solver bug, not bad input.
inline BlDistanceResult bl_distance(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    detail::require_same_space(mu.space(), nu.space(), "bl_distance");
    if (!detail::canonical_order(mu, nu)) {
        BlDistanceResult r = bl_distance(nu, mu);
        std::vector<double> neg = r.witness.values();
        for (double& v : neg) v = -v;
        return {r.value, r.transport_value, r.coupling.transposed(),
                TabulatedFunction(mu.space(), std::move(neg))};
    }

    BlNormResult primal = bl_norm(mu - nu);

    const auto& X = *mu.space();
    TransportProblem tp;
    tp.supply = mu.mass();
    tp.demand = nu.mass();
    tp.cost.assign(X.size(), std::vector<double>(X.size(), 0.0));
    for (int i = 0; i < X.size(); ++i)
        for (int j = 0; j < X.size(); ++j) tp.cost[i][j] = std::min(X.dist(i, j), 2.0);
    TransportPlan t = solve_transport(tp, TransportMethod::NetworkSimplex);

    if (std::fabs(primal.value - t.value) > 1e-6)
        throw InternalError("bl_distance: duality gap between LP (" +
                            format_double(primal.value) + ") and transport (" +
                            format_double(t.value) + ")");
    Coupling coupling(mu, nu, std::move(t.plan));
    return {primal.value, t.value, std::move(coupling), std::move(primal.witness)};
}

struct StrassenResult {
    Coupling coupling;
    double overflow = 0.0; // pi( d > eps ), minimal over all couplings
};

// Coupling putting maximal mass on cells with d <= eps; the overflow
// 1 - m(eps) is the least possible tail mass at threshold eps.
inline StrassenResult strassen_coupling(const ProbabilityMeasure& mu,
                                        const ProbabilityMeasure& nu, double eps) {
    detail::require_same_space(mu.space(), nu.space(), "strassen_coupling");
    if (!(eps >= 0.0)) throw InputError("strassen_coupling: eps must be nonnegative");
    const auto& X = *mu.space();
    const int n = X.size();
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) allowed[i][j] = (X.dist(i, j) <= eps);
    FlowResult flow = max_coupling_mass(mu.mass(), nu.mass(), allowed);
    Matrix plan = detail::complete_to_coupling(std::move(flow.flow), mu, nu);
    return {Coupling(mu, nu, std::move(plan)), std::max(0.0, 1.0 - flow.mass)};
}

struct ProkhorovResult {
    double value = 0.0;     // the metric
    double threshold = 0.0; // eps at which the coupling certifies it (== value)
    Coupling coupling;      // pi( d > threshold ) <= threshold
};

// Levy-Prokhorov distance in Strassen form: the least eps admitting a
// coupling with pi(d > eps) <= eps. m(eps) is a right-continuous step
// function that only changes at distance values, so over each interval
// [delta_k, delta_{k+1}) the objective max(eps, 1 - m(eps)) is minimized
// either at delta_k or at the crossing 1 - m_k; scanning those candidates
// is exact. Agreement with the subset definition is checked by
// prokhorov_bruteforce in tests, not assumed.
inline ProkhorovResult levy_prokhorov(const ProbabilityMeasure& mu,
                                      const ProbabilityMeasure& nu) {
    detail::require_same_space(mu.space(), nu.space(), "levy_prokhorov");
    if (!detail::canonical_order(mu, nu)) {
        ProkhorovResult r = levy_prokhorov(nu, mu);
        return {r.value, r.threshold, r.coupling.transposed()};
    }
    const auto& X = *mu.space();
    const int n = X.size();
    const std::vector<double> deltas = X.distinct_distances();

    double best = std::numeric_limits<double>::infinity();
    double best_eps = 0.0;
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
    Matrix best_flow;
    for (double delta : deltas) {
        if (delta >= best) break; // max(delta, .) can only grow from here
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) allowed[i][j] = (X.dist(i, j) <= delta);
        FlowResult flow = max_coupling_mass(mu.mass(), nu.mass(), allowed);
        const double deficit = std::max(0.0, 1.0 - flow.mass);
        const double candidate = std::max(delta, deficit);
        if (candidate < best) {
            best = candidate;
            best_eps = candidate; // the least feasible eps in this interval
            best_flow = std::move(flow.flow);
        }
    }
    Matrix plan = detail::complete_to_coupling(std::move(best_flow), mu, nu);
    ProkhorovResult res{best, best_eps, Coupling(mu, nu, std::move(plan))};
    if (res.coupling.tail_mass(res.threshold) > res.threshold + 1e-9)
        throw InternalError("levy_prokhorov: certifying coupling exceeds its threshold");
    return res;
}

// Independent oracle from the subset definition:
//   inf { eps : mu(A) <= nu(A^eps) + eps for all A }, symmetrized,
// with closed fattening A^eps = { y : d(y, A) <= eps }. Exhaustive over
// all 2^n subsets, so the space is capped at 16 points.
inline double prokhorov_bruteforce(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
    detail::require_same_space(mu.space(), nu.space(), "prokhorov_bruteforce");
    const auto& X = *mu.space();
    const int n = X.size();
    if (n > 16)
        throw CapacityError("prokhorov_bruteforce: space has " + std::to_string(n) +
                            " points, limit 16 (2^n subsets)");
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);

    // Subset mass tables for both measures.
    std::vector<double> mass_mu(full + 1, 0.0), mass_nu(full + 1, 0.0);
    for (std::uint32_t a = 1; a <= full; ++a) {
        const int low = __builtin_ctz(a);
        mass_mu[a] = mass_mu[a & (a - 1)] + mu[low];
        mass_nu[a] = mass_nu[a & (a - 1)] + nu[low];
    }

    const std::vector<double> deltas = X.distinct_distances();
    std::vector<std::uint32_t> ball(n);
    std::vector<std::uint32_t> fat(full + 1, 0);
    double best = std::numeric_limits<double>::infinity();
    for (double delta : deltas) {
        if (delta >= best) break;
        for (int a = 0; a < n; ++a) {
            ball[a] = 0;
            for (int y = 0; y < n; ++y)
                if (X.dist(y, a) <= delta) ball[a] |= (1u << y);
        }
        double deficit = 0.0;
        for (std::uint32_t a = 1; a <= full; ++a) {
            fat[a] = fat[a & (a - 1)] | ball[__builtin_ctz(a)];
            deficit = std::max(deficit, mass_mu[a] - mass_nu[fat[a]]);
            deficit = std::max(deficit, mass_nu[a] - mass_mu[fat[a]]);
        }
        best = std::min(best, std::max(delta, deficit));
    }
    return best;
}

} // namespace dudleylab
