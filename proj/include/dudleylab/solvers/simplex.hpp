#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dudleylab/error.hpp"

namespace dudleylab {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
    std::vector<double> coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

// Maximization program with per-variable bounds (+-infinity allowed).
// Default bounds are [0, +inf).
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<double> lower;
    std::vector<double> upper;

    explicit LinearProgram(int nvars)
        : objective(nvars, 0.0),
          lower(nvars, 0.0),
          upper(nvars, std::numeric_limits<double>::infinity()) {}

    int num_vars() const { return static_cast<int>(objective.size()); }

    void add_constraint(std::vector<double> coeffs, Relation rel, double rhs) {
        if (static_cast<int>(coeffs.size()) != num_vars())
            throw InputError("LinearProgram: constraint width mismatch");
        constraints.push_back({std::move(coeffs), rel, rhs});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// duals are the multipliers of the internal minimization of -objective.
// For a program with default [0, inf) bounds and rhs >= 0 they satisfy
//   duals . A_j <= -objective[j] + tol   for every column j,
// with equality on basic columns (complementary slackness). That is the
// contract the transport solver relies on to recover potentials.
struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;
    std::vector<double> duals;
    long iterations = 0;
};

namespace detail {

// Dense two-phase simplex on the standard form min c.y, Ay = b, y >= 0.
// Bland's rule (lowest eligible index for both entering and leaving
// variables) everywhere, so pivoting cannot cycle and identical inputs
// take identical paths.
class SimplexTableau {
public:
    // rows: coefficient rows with rhs >= 0 required by the caller.
    SimplexTableau(std::vector<std::vector<double>> rows, std::vector<double> rhs,
                   std::vector<double> cost, int num_slack_and_struct, long iteration_cap)
        : m_(static_cast<int>(rows.size())),
          ncols_(num_slack_and_struct + static_cast<int>(rows.size())),
          cap_(iteration_cap) {
        const int base = num_slack_and_struct;
        T_.assign(m_, std::vector<double>(ncols_ + 1, 0.0));
        basis_.resize(m_);
        active_.assign(m_, true);
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < base; ++j) T_[i][j] = rows[i][j];
            T_[i][base + i] = 1.0; // artificial
            T_[i][ncols_] = rhs[i];
            basis_[i] = base + i;
        }
        art_begin_ = base;
        cost_ = std::move(cost);
        cost_.resize(ncols_, 0.0);

        // Phase-1 reduced costs: minimize the sum of artificials, whose
        // basic representation is r1 = c1 - 1^T T.
        r1_.assign(ncols_ + 1, 0.0);
        for (int j = art_begin_; j < ncols_; ++j) r1_[j] = 1.0;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j <= ncols_; ++j) r1_[j] -= T_[i][j];
        r2_.assign(ncols_ + 1, 0.0);
        for (int j = 0; j < ncols_; ++j) r2_[j] = cost_[j];
    }

    // Returns false when phase 1 cannot reach zero (infeasible).
    bool phase1() {
        if (!run(r1_, /*ban_artificials=*/false))
            throw SolverError("simplex: phase 1 became unbounded, which signals "
                              "a corrupted tableau");
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i)
            if (active_[i] && basis_[i] >= art_begin_) infeas += T_[i][ncols_];
        if (infeas > 1e-9) return false;
        drive_out_artificials();
        return true;
    }

    // Returns false on unboundedness.
    bool phase2() { return run(r2_, /*ban_artificials=*/true); }

    double basic_value(int col) const {
        for (int i = 0; i < m_; ++i)
            if (active_[i] && basis_[i] == col) return T_[i][ncols_];
        return 0.0;
    }

    // Multiplier of row i, read off the artificial column's reduced cost.
    double dual(int i) const { return -r2_[art_begin_ + i]; }

    long iterations() const { return iters_; }

private:
    void pivot(int r, int s) {
        const double inv = 1.0 / T_[r][s];
        for (double& v : T_[r]) v *= inv;
        T_[r][s] = 1.0;
        auto eliminate = [&](std::vector<double>& row) {
            const double f = row[s];
            if (f == 0.0) return;
            for (int j = 0; j <= ncols_; ++j) row[j] -= f * T_[r][j];
            row[s] = 0.0;
        };
        for (int i = 0; i < m_; ++i)
            if (i != r && active_[i]) eliminate(T_[i]);
        eliminate(r1_);
        eliminate(r2_);
        basis_[r] = s;
        ++iters_;
        if (iters_ > cap_)
            throw SolverError("simplex: iteration cap " + std::to_string(cap_) +
                              " exceeded after " + std::to_string(iters_) + " pivots");
    }

    bool run(std::vector<double>& r, bool ban_artificials) {
        constexpr double kEnterTol = 1e-9;
        constexpr double kPivotTol = 1e-11;
        for (;;) {
            int s = -1;
            const int limit = ban_artificials ? art_begin_ : ncols_;
            for (int j = 0; j < limit; ++j)
                if (r[j] < -kEnterTol) { s = j; break; } // Bland: lowest index
            if (s < 0) return true;

            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (!active_[i] || T_[i][s] <= kPivotTol) continue;
                const double ratio = T_[i][ncols_] / T_[i][s];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false; // unbounded direction
            pivot(leave, s);
        }
    }

    // Basic artificials at value 0 must not survive into phase 2, where a
    // pivot could silently lift them above 0. Pivot each one onto any real
    // column in its row; a row with no such column is redundant and is
    // deactivated.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (!active_[i] || basis_[i] < art_begin_) continue;
            int col = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (std::fabs(T_[i][j]) > 1e-9) { col = j; break; }
            if (col >= 0)
                pivot(i, col);
            else
                active_[i] = false;
        }
    }

    int m_;
    int ncols_;
    int art_begin_;
    long cap_;
    long iters_ = 0;
    std::vector<std::vector<double>> T_;
    std::vector<double> r1_, r2_, cost_;
    std::vector<int> basis_;
    std::vector<bool> active_;
};

} // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp) {
    const int nv = lp.num_vars();
    const int nc = static_cast<int>(lp.constraints.size());
    if (static_cast<int>(lp.lower.size()) != nv || static_cast<int>(lp.upper.size()) != nv)
        throw InputError("solve_lp: bounds length mismatch");
    for (double c : lp.objective)
        if (!std::isfinite(c)) throw InputError("solve_lp: non-finite objective");
    for (const auto& row : lp.constraints) {
        if (!std::isfinite(row.rhs)) throw InputError("solve_lp: non-finite rhs");
        for (double a : row.coeffs)
            if (!std::isfinite(a)) throw InputError("solve_lp: non-finite coefficient");
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nv; ++j)
        if (lp.lower[j] > lp.upper[j]) throw InputError("solve_lp: empty variable bound");

    // Variable transforms onto y >= 0. Shifted: x = lo + y. Mirrored
    // (lo = -inf, hi finite): x = hi - y. Split: x = y+ - y-.
    enum class Kind { Shifted, Mirrored, Split };
    struct Transform {
        Kind kind;
        double offset;
        int col;
    };
    std::vector<Transform> tf(nv);
    int ncols = 0;
    for (int j = 0; j < nv; ++j) {
        if (lp.lower[j] > -inf) {
            tf[j] = {Kind::Shifted, lp.lower[j], ncols++};
        } else if (lp.upper[j] < inf) {
            tf[j] = {Kind::Mirrored, lp.upper[j], ncols++};
        } else {
            tf[j] = {Kind::Split, 0.0, ncols};
            ncols += 2;
        }
    }

    struct Row {
        std::vector<double> a;
        double b = 0.0;
        int user_row = -1; // -1: generated bound row
        double sign = 1.0;
        bool le = true;
    };
    std::vector<Row> rows;
    auto transform_row = [&](const std::vector<double>& coeffs, double rhs) {
        Row r;
        r.a.assign(ncols, 0.0);
        r.b = rhs;
        for (int j = 0; j < nv; ++j) {
            const double a = coeffs[j];
            if (a == 0.0) continue;
            switch (tf[j].kind) {
            case Kind::Shifted:
                r.a[tf[j].col] += a;
                r.b -= a * tf[j].offset;
                break;
            case Kind::Mirrored:
                r.a[tf[j].col] -= a;
                r.b -= a * tf[j].offset;
                break;
            case Kind::Split:
                r.a[tf[j].col] += a;
                r.a[tf[j].col + 1] -= a;
                break;
            }
        }
        return r;
    };

    for (int i = 0; i < nc; ++i) {
        const auto& c = lp.constraints[i];
        Row r = transform_row(c.coeffs, c.rhs);
        r.user_row = i;
        if (c.rel == Relation::GreaterEq) {
            for (double& a : r.a) a = -a;
            r.b = -r.b;
            r.sign = -r.sign;
        }
        r.le = (c.rel != Relation::Equal);
        rows.push_back(std::move(r));
    }
    // Residual upper bounds for doubly-bounded variables.
    for (int j = 0; j < nv; ++j) {
        if (tf[j].kind == Kind::Shifted && lp.upper[j] < inf) {
            Row r;
            r.a.assign(ncols, 0.0);
            r.a[tf[j].col] = 1.0;
            r.b = lp.upper[j] - lp.lower[j];
            r.le = true;
            rows.push_back(std::move(r));
        }
    }

    const int m = static_cast<int>(rows.size());
    int nslack = 0;
    for (const auto& r : rows)
        if (r.le) ++nslack;

    // Assemble [structural | slack] block with rhs >= 0.
    const int base = ncols + nslack;
    std::vector<std::vector<double>> block(m, std::vector<double>(base, 0.0));
    std::vector<double> rhs(m, 0.0);
    std::vector<double> cost(base, 0.0);
    {
        int slack = ncols;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < ncols; ++j) block[i][j] = rows[i].a[j];
            rhs[i] = rows[i].b;
            if (rows[i].le) block[i][slack++] = 1.0;
        }
    }
    // Internal objective: minimize -(user objective) in transformed vars.
    for (int j = 0; j < nv; ++j) {
        const double c = lp.objective[j];
        if (c == 0.0) continue;
        switch (tf[j].kind) {
        case Kind::Shifted: cost[tf[j].col] -= c; break;
        case Kind::Mirrored: cost[tf[j].col] += c; break;
        case Kind::Split:
            cost[tf[j].col] -= c;
            cost[tf[j].col + 1] += c;
            break;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0.0) {
            for (double& a : block[i]) a = -a;
            rhs[i] = -rhs[i];
            rows[i].sign = -rows[i].sign;
        }
    }

    const long cap = std::max<long>(500, 10L * (nv + nc) * (nv + nc));
    detail::SimplexTableau tab(std::move(block), std::move(rhs), std::move(cost), base, cap);

    LpSolution sol;
    if (!tab.phase1()) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = tab.iterations();
        return sol;
    }
    if (!tab.phase2()) {
        sol.status = LpStatus::Unbounded;
        sol.iterations = tab.iterations();
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.iterations = tab.iterations();
    sol.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
        switch (tf[j].kind) {
        case Kind::Shifted: sol.x[j] = tf[j].offset + tab.basic_value(tf[j].col); break;
        case Kind::Mirrored: sol.x[j] = tf[j].offset - tab.basic_value(tf[j].col); break;
        case Kind::Split:
            sol.x[j] = tab.basic_value(tf[j].col) - tab.basic_value(tf[j].col + 1);
            break;
        }
    }
    sol.value = 0.0;
    for (int j = 0; j < nv; ++j) sol.value += lp.objective[j] * sol.x[j];
    sol.duals.assign(nc, 0.0);
    for (int i = 0; i < m; ++i)
        if (rows[i].user_row >= 0) sol.duals[rows[i].user_row] = rows[i].sign * tab.dual(i);

    // Verify the feasibility contract before reporting Optimal.
    double scale = 1.0;
    for (const auto& c : lp.constraints) scale = std::max(scale, std::fabs(c.rhs));
    const double ftol = 1e-9 * scale;
    for (int i = 0; i < nc; ++i) {
        const auto& c = lp.constraints[i];
        double lhs = 0.0;
        for (int j = 0; j < nv; ++j) lhs += c.coeffs[j] * sol.x[j];
        const bool bad = (c.rel == Relation::LessEq && lhs > c.rhs + ftol) ||
                         (c.rel == Relation::GreaterEq && lhs < c.rhs - ftol) ||
                         (c.rel == Relation::Equal && std::fabs(lhs - c.rhs) > ftol);
        if (bad)
            throw SolverError("solve_lp: optimal basis violates constraint " +
                              std::to_string(i) + " by " + std::to_string(lhs - c.rhs));
    }
    for (int j = 0; j < nv; ++j)
        if (sol.x[j] < lp.lower[j] - ftol || sol.x[j] > lp.upper[j] + ftol)
            throw SolverError("solve_lp: optimal point violates bound of variable " +
                              std::to_string(j));
    return sol;
}

} // namespace dudleylab
