#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dudleylab/error.hpp"
#include "dudleylab/metric_space.hpp"

namespace dudleylab {

// A real function on a finite metric space, given by its values on the
// points. On a finite space every function is bounded and uniformly
// continuous, so membership in n*BLip(d) is a matter of scale, not class.
class TabulatedFunction {
public:
    TabulatedFunction(SpacePtr space, std::vector<double> values)
        : space_(std::move(space)), values_(std::move(values)) {
        if (!space_) throw InputError("TabulatedFunction: null space");
        if (static_cast<int>(values_.size()) != space_->size())
            throw InputError("TabulatedFunction: value count must equal space size");
        for (double v : values_)
            if (!std::isfinite(v)) throw InputError("TabulatedFunction: non-finite value");
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_.at(i); }
    int size() const { return static_cast<int>(values_.size()); }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::fabs(v));
        return m;
    }

private:
    SpacePtr space_;
    std::vector<double> values_;
};

// max |f(x)-f(y)| / d(x,y) over pairs; 0 on a singleton.
inline double lipschitz_constant(const TabulatedFunction& f) {
    const auto& X = *f.space();
    double L = 0.0;
    for (int i = 0; i < X.size(); ++i)
        for (int j = i + 1; j < X.size(); ++j)
            L = std::max(L, std::fabs(f[i] - f[j]) / X.dist(i, j));
    return L;
}

// Smallest s with f in s*BLip(d): max(sup|f|, Lip(f)).
inline double blip_scale(const TabulatedFunction& f) {
    return std::max(f.sup_norm(), lipschitz_constant(f));
}

struct RegularizationResult {
    TabulatedFunction g;
    int scale;    // integer n with g in n*BLip(d) and f - eps <= g <= f
    double theta; // largest delta with d(x,y) < delta => |f(x)-f(y)| < eps
};

// Inf-convolution regularization: g(y) = max_x ( f(x) - eps - n d(x,y) ).
// theta is canonical on a finite space: the smallest distance at which some
// pair has |f(x)-f(y)| >= eps, or diameter+1 when no pair does (+infinity
// when f == 0). n is the smallest integer >= max(sup|f| + eps, 2 sup|f| / theta).
inline RegularizationResult regularize(const TabulatedFunction& f, double eps) {
    if (!(eps > 0.0)) throw InputError("regularize: epsilon must be positive");
    const auto& X = *f.space();
    const double norm = f.sup_norm();

    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < X.size(); ++i)
        for (int j = i + 1; j < X.size(); ++j)
            if (std::fabs(f[i] - f[j]) >= eps) theta = std::min(theta, X.dist(i, j));
    if (std::isinf(theta) && norm > 0.0) theta = X.diameter() + 1.0;

    double bound = norm + eps;
    if (norm > 0.0) bound = std::max(bound, 2.0 * norm / theta);
    const int n = std::max(1, static_cast<int>(std::ceil(bound)));

    std::vector<double> g(X.size());
    for (int y = 0; y < X.size(); ++y) {
        double best = -std::numeric_limits<double>::infinity();
        for (int x = 0; x < X.size(); ++x)
            best = std::max(best, f[x] - eps - n * X.dist(x, y));
        g[y] = best;
    }
    return {TabulatedFunction(f.space(), std::move(g)), n, theta};
}

// Bounded continuous witness separating the pairs (j, j + 1/j), j >= 1:
// a tent of half-width 1/(2j) at each integer j >= 1. The value at the
// center is 2 for j = 1 and 1 for j >= 2; since 1 + 1/1 = 2 is itself the
// j = 2 center, the double-height first tent is what keeps
// f(j) - f(j + 1/j) = 1 for every j >= 1. Range [0, 2]. The function is
// continuous but deliberately not uniformly continuous.
inline double separating_sequence_function(double t) {
    const double lo = std::floor(t);
    for (double c : {lo, lo + 1.0}) {
        if (c < 1.0) continue;
        const double bump = 1.0 - 2.0 * c * std::fabs(t - c);
        if (bump > 0.0) return (c == 1.0 ? 2.0 : 1.0) * bump; // tent supports are disjoint
    }
    return 0.0;
}

} // namespace dudleylab
