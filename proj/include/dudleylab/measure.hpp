#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/lipschitz.hpp"
#include "dudleylab/metric_space.hpp"

namespace dudleylab {

namespace detail {
inline void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* who) {
    if (!spaces_equal(a, b)) throw InputError(std::string(who) + ": space mismatch");
}
} // namespace detail

// Finitely supported signed measure: one mass per point of the space.
class SignedMeasure {
public:
    SignedMeasure(SpacePtr space, std::vector<double> mass)
        : space_(std::move(space)), mass_(std::move(mass)) {
        if (!space_) throw InputError("SignedMeasure: null space");
        if (static_cast<int>(mass_.size()) != space_->size())
            throw InputError("SignedMeasure: mass count must equal space size");
        for (double m : mass_)
            if (!std::isfinite(m)) throw InputError("SignedMeasure: non-finite mass");
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& mass() const { return mass_; }
    double operator[](int i) const { return mass_.at(i); }
    int size() const { return static_cast<int>(mass_.size()); }

    double total() const {
        double s = 0.0;
        for (double m : mass_) s += m;
        return s;
    }

private:
    SpacePtr space_;
    std::vector<double> mass_;
};

inline SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
    detail::require_same_space(a.space(), b.space(), "measure sum");
    std::vector<double> m(a.mass());
    for (int i = 0; i < b.size(); ++i) m[i] += b[i];
    return SignedMeasure(a.space(), std::move(m));
}

inline SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
    detail::require_same_space(a.space(), b.space(), "measure difference");
    std::vector<double> m(a.mass());
    for (int i = 0; i < b.size(); ++i) m[i] -= b[i];
    return SignedMeasure(a.space(), std::move(m));
}

inline SignedMeasure operator*(double a, const SignedMeasure& mu) {
    std::vector<double> m(mu.mass());
    for (double& x : m) x *= a;
    return SignedMeasure(mu.space(), std::move(m));
}

// Nonnegative masses summing to 1. Construction accepts a total within
// 1e-9 of 1 (file rounding) and renormalizes; worse drift is rejected as a
// genuine error. Mass entries above -1e-12 are clamped to 0 so that exact
// arithmetic on probability vectors cannot be rejected for sign dust.
class ProbabilityMeasure {
public:
    ProbabilityMeasure(SpacePtr space, std::vector<double> mass)
        : signed_(normalize(std::move(space), std::move(mass))) {}

    const SpacePtr& space() const { return signed_.space(); }
    const std::vector<double>& mass() const { return signed_.mass(); }
    double operator[](int i) const { return signed_[i]; }
    int size() const { return signed_.size(); }

    const SignedMeasure& as_signed() const { return signed_; }
    operator const SignedMeasure&() const { return signed_; }

private:
    static SignedMeasure normalize(SpacePtr space, std::vector<double> mass) {
        double total = 0.0;
        for (double& m : mass) {
            if (!std::isfinite(m)) throw InputError("ProbabilityMeasure: non-finite mass");
            if (m < 0.0) {
                if (m < -1e-12) throw InputError("ProbabilityMeasure: negative mass");
                m = 0.0;
            }
            total += m;
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw InputError("ProbabilityMeasure: masses sum to " + format_double(total) +
                             ", expected 1 within 1e-9");
        for (double& m : mass) m /= total;
        return SignedMeasure(std::move(space), std::move(mass));
    }

    SignedMeasure signed_;
};

inline SignedMeasure operator-(const ProbabilityMeasure& a, const ProbabilityMeasure& b) {
    return a.as_signed() - b.as_signed();
}

inline ProbabilityMeasure point_mass(const SpacePtr& space, int p) {
    if (!space) throw InputError("point_mass: null space");
    if (p < 0 || p >= space->size()) throw InputError("point_mass: index out of range");
    std::vector<double> m(space->size(), 0.0);
    m[p] = 1.0;
    return ProbabilityMeasure(space, std::move(m));
}

// <mu, f> = sum_i mass[i] f[i]; bilinear in (mu, f).
inline double integrate(const SignedMeasure& mu, const TabulatedFunction& f) {
    detail::require_same_space(mu.space(), f.space(), "integrate");
    double s = 0.0;
    for (int i = 0; i < mu.size(); ++i) s += mu[i] * f[i];
    return s;
}

// Image measure along phi; satisfies <phi# mu, g> = <mu, g o phi> exactly.
inline SignedMeasure pushforward(const PointMap& phi, const SignedMeasure& mu) {
    detail::require_same_space(mu.space(), phi.source(), "pushforward");
    std::vector<double> m(phi.target()->size(), 0.0);
    for (int i = 0; i < mu.size(); ++i) m[phi.apply(i)] += mu[i];
    return SignedMeasure(phi.target(), std::move(m));
}

inline ProbabilityMeasure pushforward(const PointMap& phi, const ProbabilityMeasure& mu) {
    SignedMeasure img = pushforward(phi, mu.as_signed());
    return ProbabilityMeasure(img.space(), img.mass());
}

// |mu|(X) = sum |mass[i]| for finitely supported measures.
inline double total_variation_norm(const SignedMeasure& mu) {
    double s = 0.0;
    for (double m : mu.mass()) s += std::fabs(m);
    return s;
}

// Joint mass matrix with prescribed marginals; certifies metric values.
// Row and column marginals must match the prescribed measures within 1e-9.
class Coupling {
public:
    Coupling(ProbabilityMeasure row, ProbabilityMeasure col, Matrix plan)
        : row_(std::move(row)), col_(std::move(col)), plan_(std::move(plan)) {
        const int m = row_.size();
        const int n = col_.size();
        if (static_cast<int>(plan_.size()) != m)
            throw InputError("Coupling: plan row count mismatch");
        for (const auto& r : plan_)
            if (static_cast<int>(r.size()) != n)
                throw InputError("Coupling: plan column count mismatch");
        for (const auto& r : plan_)
            for (double x : r) {
                if (!std::isfinite(x) || x < -1e-12)
                    throw InputError("Coupling: plan entries must be nonnegative");
            }
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += plan_[i][j];
            if (std::fabs(s - row_[i]) > 1e-9)
                throw InputError("Coupling: row marginal mismatch at " + std::to_string(i));
        }
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += plan_[i][j];
            if (std::fabs(s - col_[j]) > 1e-9)
                throw InputError("Coupling: column marginal mismatch at " + std::to_string(j));
        }
    }

    const ProbabilityMeasure& row_marginal() const { return row_; }
    const ProbabilityMeasure& col_marginal() const { return col_; }
    const SpacePtr& row_space() const { return row_.space(); }
    const SpacePtr& col_space() const { return col_.space(); }
    const Matrix& plan() const { return plan_; }

    // E_pi[min(d, cap)]; both marginals must live on one space.
    double expected_truncated_distance(double cap) const {
        detail::require_same_space(row_.space(), col_.space(), "expected_truncated_distance");
        const auto& X = *row_.space();
        double s = 0.0;
        for (int i = 0; i < row_.size(); ++i)
            for (int j = 0; j < col_.size(); ++j)
                s += plan_[i][j] * std::min(X.dist(i, j), cap);
        return s;
    }

    // pi( d > threshold ).
    double tail_mass(double threshold) const {
        detail::require_same_space(row_.space(), col_.space(), "tail_mass");
        const auto& X = *row_.space();
        double s = 0.0;
        for (int i = 0; i < row_.size(); ++i)
            for (int j = 0; j < col_.size(); ++j)
                if (X.dist(i, j) > threshold) s += plan_[i][j];
        return s;
    }

    Coupling transposed() const {
        Matrix t(col_.size(), std::vector<double>(row_.size(), 0.0));
        for (int i = 0; i < row_.size(); ++i)
            for (int j = 0; j < col_.size(); ++j) t[j][i] = plan_[i][j];
        return Coupling(col_, row_, std::move(t));
    }

private:
    ProbabilityMeasure row_;
    ProbabilityMeasure col_;
    Matrix plan_;
};

} // namespace dudleylab
