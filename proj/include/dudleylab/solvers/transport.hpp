#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/metric_space.hpp"
#include "dudleylab/solvers/simplex.hpp"

namespace dudleylab {

// Balanced transportation instance: ship `supply` to `demand` at unit
// costs `cost`, minimizing total cost.
struct TransportProblem {
    std::vector<double> supply;
    std::vector<double> demand;
    Matrix cost;

    void validate() const {
        const std::size_t m = supply.size();
        const std::size_t n = demand.size();
        if (m == 0 || n == 0) throw InputError("transport: empty instance");
        if (cost.size() != m) throw InputError("transport: cost row count mismatch");
        for (const auto& row : cost) {
            if (row.size() != n) throw InputError("transport: cost column count mismatch");
            for (double c : row)
                if (!std::isfinite(c) || c < 0.0)
                    throw InputError("transport: costs must be finite and nonnegative");
        }
        double s = 0.0, t = 0.0;
        for (double x : supply) {
            if (!std::isfinite(x) || x < 0.0) throw InputError("transport: bad supply");
            s += x;
        }
        for (double x : demand) {
            if (!std::isfinite(x) || x < 0.0) throw InputError("transport: bad demand");
            t += x;
        }
        if (std::fabs(s - t) > 1e-9)
            throw InputError("transport: unbalanced instance, supply " + format_double(s) +
                             " vs demand " + format_double(t));
    }
};

enum class TransportMethod { Lp, NetworkSimplex, CrossCheck };

struct TransportPlan {
    double value = 0.0;
    Matrix plan;
    std::vector<double> row_potential;
    std::vector<double> col_potential;
    long iterations = 0;
};

namespace detail {

inline double plan_cost(const Matrix& plan, const Matrix& cost) {
    double v = 0.0;
    for (std::size_t i = 0; i < plan.size(); ++i)
        for (std::size_t j = 0; j < plan[i].size(); ++j) v += plan[i][j] * cost[i][j];
    return v;
}

// Optimality certificate: dual feasibility u_i + v_j <= c_ij, complementary
// slackness on the support, and strong duality, all within 1e-8.
inline void check_transport_certificate(const TransportProblem& tp, const TransportPlan& res,
                                        const char* route) {
    const int m = static_cast<int>(tp.supply.size());
    const int n = static_cast<int>(tp.demand.size());
    const auto& u = res.row_potential;
    const auto& v = res.col_potential;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const double r = tp.cost[i][j] - u[i] - v[j];
            if (r < -1e-8)
                throw SolverError(std::string("transport(") + route +
                                  "): dual infeasibility " + format_double(r));
            if (res.plan[i][j] > 1e-9 && std::fabs(r) > 1e-8)
                throw SolverError(std::string("transport(") + route +
                                  "): complementary slackness violated at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }
    double dual_value = 0.0;
    for (int i = 0; i < m; ++i) dual_value += u[i] * tp.supply[i];
    for (int j = 0; j < n; ++j) dual_value += v[j] * tp.demand[j];
    if (std::fabs(dual_value - res.value) > 1e-8 * std::max(1.0, std::fabs(res.value)))
        throw SolverError(std::string("transport(") + route + "): duality gap " +
                          format_double(dual_value - res.value));
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += res.plan[i][j];
        if (std::fabs(s - tp.supply[i]) > 1e-9)
            throw SolverError(std::string("transport(") + route + "): row marginal off");
    }
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += res.plan[i][j];
        if (std::fabs(s - tp.demand[j]) > 1e-9)
            throw SolverError(std::string("transport(") + route + "): column marginal off");
    }
}

inline TransportPlan solve_transport_lp(const TransportProblem& tp) {
    const int m = static_cast<int>(tp.supply.size());
    const int n = static_cast<int>(tp.demand.size());
    LinearProgram lp(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) lp.objective[i * n + j] = -tp.cost[i][j];
    for (int i = 0; i < m; ++i) {
        std::vector<double> row(m * n, 0.0);
        for (int j = 0; j < n; ++j) row[i * n + j] = 1.0;
        lp.add_constraint(std::move(row), Relation::Equal, tp.supply[i]);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> row(m * n, 0.0);
        for (int i = 0; i < m; ++i) row[i * n + j] = 1.0;
        lp.add_constraint(std::move(row), Relation::Equal, tp.demand[j]);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("transport(lp): unexpected status");

    TransportPlan res;
    res.plan.assign(m, std::vector<double>(n, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) res.plan[i][j] = std::max(0.0, sol.x[i * n + j]);
    res.value = plan_cost(res.plan, tp.cost);
    res.row_potential.assign(sol.duals.begin(), sol.duals.begin() + m);
    res.col_potential.assign(sol.duals.begin() + m, sol.duals.end());
    res.iterations = sol.iterations;
    return res;
}

// Transportation (network) simplex: northwest-corner start, tree
// potentials, least-index entering cell, least-index leaving cell.
inline TransportPlan solve_transport_network(const TransportProblem& tp) {
    const int m = static_cast<int>(tp.supply.size());
    const int n = static_cast<int>(tp.demand.size());

    Matrix plan(m, std::vector<double>(n, 0.0));
    std::vector<std::vector<bool>> basic(m, std::vector<bool>(n, false));

    // Northwest corner. Exact balance is forced onto the last demand so
    // the staircase always terminates at (m-1, n-1).
    std::vector<double> rs = tp.supply, cd = tp.demand;
    {
        double s = 0.0, t = 0.0;
        for (double x : rs) s += x;
        for (double x : cd) t += x;
        cd[n - 1] += s - t;
        if (cd[n - 1] < 0.0) cd[n - 1] = 0.0;
    }
    int i = 0, j = 0;
    for (;;) {
        const double q = std::min(rs[i], cd[j]);
        plan[i][j] += q;
        basic[i][j] = true;
        rs[i] -= q;
        cd[j] -= q;
        if (i == m - 1 && j == n - 1) break;
        if (rs[i] <= 0.0 && i < m - 1)
            ++i;
        else if (j < n - 1)
            ++j;
        else
            ++i;
    }

    std::vector<double> u(m, 0.0), v(n, 0.0);
    auto compute_potentials = [&]() {
        std::vector<bool> row_done(m, false), col_done(n, false);
        std::queue<int> work; // nodes: 0..m-1 rows, m..m+n-1 cols
        u[0] = 0.0;
        row_done[0] = true;
        work.push(0);
        while (!work.empty()) {
            const int node = work.front();
            work.pop();
            if (node < m) {
                for (int c = 0; c < n; ++c)
                    if (basic[node][c] && !col_done[c]) {
                        v[c] = tp.cost[node][c] - u[node];
                        col_done[c] = true;
                        work.push(m + c);
                    }
            } else {
                const int c = node - m;
                for (int r = 0; r < m; ++r)
                    if (basic[r][c] && !row_done[r]) {
                        u[r] = tp.cost[r][c] - v[c];
                        row_done[r] = true;
                        work.push(r);
                    }
            }
        }
        for (bool b : row_done)
            if (!b) throw SolverError("transport(network): basis tree not spanning");
        for (bool b : col_done)
            if (!b) throw SolverError("transport(network): basis tree not spanning");
    };

    const long cap = std::max<long>(1000, 10L * (m * n + m + n) * (m * n + m + n));
    long iters = 0;
    for (;;) {
        compute_potentials();
        int ei = -1, ej = -1;
        for (int r = 0; r < m && ei < 0; ++r)
            for (int c = 0; c < n; ++c)
                if (!basic[r][c] && tp.cost[r][c] - u[r] - v[c] < -1e-10) {
                    ei = r;
                    ej = c;
                    break;
                }
        if (ei < 0) break;

        // Tree path from row node ei to col node m+ej; its edges plus the
        // entering cell form the unique pivot cycle.
        const int nodes = m + n;
        std::vector<int> parent(nodes, -2);
        std::queue<int> bfs;
        parent[ei] = -1;
        bfs.push(ei);
        while (!bfs.empty() && parent[m + ej] == -2) {
            const int node = bfs.front();
            bfs.pop();
            if (node < m) {
                for (int c = 0; c < n; ++c)
                    if (basic[node][c] && parent[m + c] == -2) {
                        parent[m + c] = node;
                        bfs.push(m + c);
                    }
            } else {
                const int c = node - m;
                for (int r = 0; r < m; ++r)
                    if (basic[r][c] && parent[r] == -2) {
                        parent[r] = node;
                        bfs.push(r);
                    }
            }
        }
        if (parent[m + ej] == -2)
            throw SolverError("transport(network): entering cell disconnected from tree");

        std::vector<std::pair<int, int>> path; // basic cells along the tree path
        for (int node = m + ej; parent[node] != -1; node = parent[node]) {
            const int p = parent[node];
            const int r = std::min(node, p) /* row node */;
            const int c = std::max(node, p) - m;
            path.push_back({r, c});
        }
        // Walking from the entering cell around the cycle, path edges
        // alternate -,+,... starting from the edge at col ej; with the
        // path stored col-side first that is exactly the even positions.
        std::vector<std::pair<int, int>> minus, plus;
        for (std::size_t t = 0; t < path.size(); ++t)
            (t % 2 == 0 ? minus : plus).push_back(path[t]);

        double theta = std::numeric_limits<double>::infinity();
        for (auto [r, c] : minus) theta = std::min(theta, plan[r][c]);
        std::pair<int, int> leaving{-1, -1};
        for (auto [r, c] : minus)
            if (plan[r][c] == theta) {
                if (leaving.first < 0 || r * n + c < leaving.first * n + leaving.second)
                    leaving = {r, c};
            }

        plan[ei][ej] += theta;
        for (auto [r, c] : plus) plan[r][c] += theta;
        for (auto [r, c] : minus) plan[r][c] -= theta;
        plan[leaving.first][leaving.second] = 0.0;
        basic[leaving.first][leaving.second] = false;
        basic[ei][ej] = true;

        if (++iters > cap)
            throw SolverError("transport(network): iteration cap exceeded");
    }

    TransportPlan res;
    res.plan = std::move(plan);
    res.value = plan_cost(res.plan, tp.cost);
    res.row_potential = std::move(u);
    res.col_potential = std::move(v);
    res.iterations = iters;
    return res;
}

} // namespace detail

// Solves the instance and certifies optimality via recovered potentials.
// CrossCheck runs both routes, demands agreement within 1e-8, and returns
// the LP result.
inline TransportPlan solve_transport(const TransportProblem& tp,
                                     TransportMethod method = TransportMethod::Lp) {
    tp.validate();
    if (method == TransportMethod::CrossCheck) {
        TransportPlan a = detail::solve_transport_lp(tp);
        detail::check_transport_certificate(tp, a, "lp");
        TransportPlan b = detail::solve_transport_network(tp);
        detail::check_transport_certificate(tp, b, "network");
        if (std::fabs(a.value - b.value) > 1e-8 * std::max(1.0, std::fabs(a.value)))
            throw InternalError("solve_transport: cross-check disagreement: lp " +
                                format_double(a.value) + " vs network " +
                                format_double(b.value));
        return a;
    }
    TransportPlan res = (method == TransportMethod::Lp) ? detail::solve_transport_lp(tp)
                                                        : detail::solve_transport_network(tp);
    detail::check_transport_certificate(
        tp, res, method == TransportMethod::Lp ? "lp" : "network");
    return res;
}

} // namespace dudleylab
