#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/metric_space.hpp"

namespace dudleylab {

struct FlowResult {
    double mass = 0.0; // total routed mass
    Matrix flow;       // flow[i][j] through allowed cell (i, j)
};

// Maximum mass routable from `supply` to `demand` through the allowed
// cells of a bipartite graph. Both vectors must be probability masses
// (nonnegative, sum 1 within 1e-9). Augmenting shortest paths (BFS) with
// capacity scaling; real capacities terminate through the scaling phases
// and the final 1e-12 floor on path bottlenecks.
inline FlowResult max_coupling_mass(const std::vector<double>& supply,
                                    const std::vector<double>& demand,
                                    const std::vector<std::vector<bool>>& allowed) {
    const int m = static_cast<int>(supply.size());
    const int n = static_cast<int>(demand.size());
    if (m == 0 || n == 0) throw InputError("max_coupling_mass: empty instance");
    if (static_cast<int>(allowed.size()) != m)
        throw InputError("max_coupling_mass: allowed row count mismatch");
    for (const auto& row : allowed)
        if (static_cast<int>(row.size()) != n)
            throw InputError("max_coupling_mass: allowed column count mismatch");
    double s = 0.0, t = 0.0;
    for (double x : supply) {
        if (!std::isfinite(x) || x < 0.0) throw InputError("max_coupling_mass: bad supply");
        s += x;
    }
    for (double x : demand) {
        if (!std::isfinite(x) || x < 0.0) throw InputError("max_coupling_mass: bad demand");
        t += x;
    }
    if (std::fabs(s - 1.0) > 1e-9 || std::fabs(t - 1.0) > 1e-9)
        throw InputError("max_coupling_mass: masses must sum to 1");

    // Nodes: 0 source, 1..m supplies, m+1..m+n demands, m+n+1 sink.
    const int N = m + n + 2;
    const int src = 0, snk = N - 1;
    Matrix res(N, std::vector<double>(N, 0.0));
    for (int i = 0; i < m; ++i) res[src][1 + i] = supply[i];
    for (int j = 0; j < n; ++j) res[1 + m + j][snk] = demand[j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (allowed[i][j]) res[1 + i][1 + m + j] = 2.0; // effectively unbounded

    constexpr double kFloor = 1e-12;
    std::vector<int> parent(N);
    auto bfs = [&](double min_cap) {
        std::fill(parent.begin(), parent.end(), -1);
        parent[src] = src;
        std::queue<int> q;
        q.push(src);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int y = 0; y < N; ++y)
                if (parent[y] < 0 && res[x][y] >= min_cap) {
                    parent[y] = x;
                    if (y == snk) return true;
                    q.push(y);
                }
        }
        return false;
    };

    for (double delta = 1.0; delta >= kFloor; delta /= 2.0) {
        while (bfs(delta)) {
            double bottleneck = std::numeric_limits<double>::infinity();
            for (int y = snk; y != src; y = parent[y])
                bottleneck = std::min(bottleneck, res[parent[y]][y]);
            for (int y = snk; y != src; y = parent[y]) {
                res[parent[y]][y] -= bottleneck;
                res[y][parent[y]] += bottleneck;
            }
        }
    }

    FlowResult out;
    out.flow.assign(m, std::vector<double>(n, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (allowed[i][j]) out.flow[i][j] = res[1 + m + j][1 + i];
    for (int i = 0; i < m; ++i) out.mass += supply[i] - res[src][1 + i];
    return out;
}

} // namespace dudleylab
