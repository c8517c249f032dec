#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "dudleylab/rng.hpp"
#include "dudleylab/solvers/transport.hpp"

using namespace dudleylab;

namespace {

// Independent oracle: enumerate all spanning-tree bases (m+n-1 cells),
// solve each triangular marginal system by leaf peeling, and keep the
// cheapest feasible vertex plan. Exponential, so only for tiny instances.
double bruteforce_transport(const TransportProblem& tp) {
    const int m = static_cast<int>(tp.supply.size());
    const int n = static_cast<int>(tp.demand.size());
    const int cells = m * n;
    const int want = m + n - 1;
    double best = std::numeric_limits<double>::infinity();

    std::vector<int> chosen;
    std::vector<std::pair<int, int>> cellv;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) cellv.push_back({i, j});

    auto evaluate = [&]() {
        // Solve for the plan on the chosen cells by repeatedly peeling a
        // row/column that touches exactly one undetermined cell.
        std::vector<double> rs = tp.supply, cd = tp.demand;
        std::vector<double> x(chosen.size(), std::numeric_limits<double>::quiet_NaN());
        std::vector<bool> done(chosen.size(), false);
        for (int round = 0; round < want; ++round) {
            int pick = -1;
            bool by_row = true;
            for (int i = 0; i < m && pick < 0; ++i) {
                int cnt = 0, last = -1;
                for (std::size_t k = 0; k < chosen.size(); ++k)
                    if (!done[k] && cellv[chosen[k]].first == i) { ++cnt; last = static_cast<int>(k); }
                if (cnt == 1) { pick = last; by_row = true; }
            }
            for (int j = 0; j < n && pick < 0; ++j) {
                int cnt = 0, last = -1;
                for (std::size_t k = 0; k < chosen.size(); ++k)
                    if (!done[k] && cellv[chosen[k]].second == j) { ++cnt; last = static_cast<int>(k); }
                if (cnt == 1) { pick = last; by_row = false; }
            }
            if (pick < 0) return; // contains a cycle; not a basis
            auto [i, j] = cellv[chosen[pick]];
            const double q = by_row ? rs[i] : cd[j];
            x[pick] = q;
            rs[i] -= q;
            cd[j] -= q;
            done[pick] = true;
        }
        double value = 0.0;
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            if (x[k] < -1e-9) return; // infeasible vertex
            auto [i, j] = cellv[chosen[k]];
            value += x[k] * tp.cost[i][j];
        }
        for (double r : rs)
            if (std::fabs(r) > 1e-9) return;
        for (double c : cd)
            if (std::fabs(c) > 1e-9) return;
        best = std::min(best, value);
    };

    // Enumerate subsets of size m+n-1.
    std::vector<int> idx(want);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == want) {
            chosen.assign(idx.begin(), idx.end());
            evaluate();
            return;
        }
        for (int c = start; c < cells; ++c) {
            idx[depth] = c;
            self(self, c + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

TransportProblem random_instance(SplitMix64& rng, int m, int n) {
    TransportProblem tp;
    tp.supply.resize(m);
    tp.demand.resize(n);
    tp.cost.assign(m, std::vector<double>(n, 0.0));
    double total = 0.0;
    for (double& s : tp.supply) {
        s = rng.uniform(0.05, 1.0);
        total += s;
    }
    double dt = 0.0;
    for (int j = 0; j < n - 1; ++j) {
        tp.demand[j] = rng.uniform(0.0, total - dt) / 2.0;
        dt += tp.demand[j];
    }
    tp.demand[n - 1] = total - dt;
    for (auto& row : tp.cost)
        for (double& c : row) c = rng.uniform(0.0, 3.0);
    return tp;
}

} // namespace

TEST_CASE("solve_transport: single cell") {
    TransportProblem tp{{1.0}, {1.0}, {{2.5}}};
    auto res = solve_transport(tp);
    CHECK(res.value == 2.5);
    CHECK(res.plan == Matrix{{1.0}});
}

TEST_CASE("solve_transport: forced half-unit move") {
    // supply (1/2, 1/2), demand (1, 0): the only feasible plan moves the
    // second half across at cost 1.
    TransportProblem tp{{0.5, 0.5}, {1.0, 0.0}, {{0.0, 9.0}, {1.0, 9.0}}};
    for (auto method : {TransportMethod::Lp, TransportMethod::NetworkSimplex,
                        TransportMethod::CrossCheck}) {
        auto res = solve_transport(tp, method);
        CHECK(res.value == Catch::Approx(0.5).margin(1e-12));
        CHECK(res.plan[0][0] == Catch::Approx(0.5).margin(1e-12));
        CHECK(res.plan[1][0] == Catch::Approx(0.5).margin(1e-12));
        CHECK(res.plan[0][1] == Catch::Approx(0.0).margin(1e-12));
        CHECK(res.plan[1][1] == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("solve_transport: zero cost matrix costs nothing") {
    SplitMix64 rng(17);
    auto tp = random_instance(rng, 3, 4);
    for (auto& row : tp.cost)
        for (double& c : row) c = 0.0;
    CHECK(solve_transport(tp).value == 0.0);
}

TEST_CASE("solve_transport: zero supplies and demands are handled") {
    TransportProblem tp{{0.0, 1.0}, {0.5, 0.0, 0.5},
                        {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}}};
    for (auto method : {TransportMethod::Lp, TransportMethod::NetworkSimplex}) {
        auto res = solve_transport(tp, method);
        CHECK(res.value == Catch::Approx(0.5 * 4.0 + 0.5 * 6.0).margin(1e-9));
        CHECK(res.plan[0][0] == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("solve_transport: unbalanced instances are rejected") {
    TransportProblem tp{{1.0}, {0.5}, {{1.0}}};
    CHECK_THROWS_AS(solve_transport(tp), InputError);
    TransportProblem neg{{-1.0, 2.0}, {1.0}, {{1.0}, {1.0}}};
    CHECK_THROWS_AS(solve_transport(neg), InputError);
}

TEST_CASE("property: LP and network simplex agree, and match brute force when tiny") {
    SplitMix64 rng(907);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = rng.uniform_int(1, 4);
        const int n = rng.uniform_int(1, 4);
        auto tp = random_instance(rng, m, n);

        auto lp = solve_transport(tp, TransportMethod::Lp);
        auto ns = solve_transport(tp, TransportMethod::NetworkSimplex);
        CHECK(std::fabs(lp.value - ns.value) <= 1e-8);

        const double oracle = bruteforce_transport(tp);
        CHECK(lp.value == Catch::Approx(oracle).margin(1e-9));
        CHECK(ns.value == Catch::Approx(oracle).margin(1e-9));
    }
}

TEST_CASE("property: plan marginals match within 1e-9 on mid-size instances") {
    SplitMix64 rng(7110);
    for (int trial = 0; trial < 15; ++trial) {
        const int m = rng.uniform_int(2, 7);
        const int n = rng.uniform_int(2, 7);
        auto tp = random_instance(rng, m, n);
        auto res = solve_transport(tp, TransportMethod::CrossCheck);
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) {
                CHECK(res.plan[i][j] >= -1e-12);
                s += res.plan[i][j];
            }
            CHECK(s == Catch::Approx(tp.supply[i]).margin(1e-9));
        }
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += res.plan[i][j];
            CHECK(s == Catch::Approx(tp.demand[j]).margin(1e-9));
        }
    }
}
