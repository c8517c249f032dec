#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dudleylab/error.hpp"

namespace dudleylab {

using Matrix = std::vector<std::vector<double>>;

// Shortest string that parses back to exactly the same double.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

enum class MetricAxiom { ZeroDiagonal, Symmetry, Positivity, Triangle };

struct MetricViolation {
    MetricAxiom axiom;
    int i = -1, j = -1, k = -1; // Triangle: d(i,j) > d(i,k) + d(k,j)
    double lhs = 0.0, rhs = 0.0;

    std::string describe() const {
        switch (axiom) {
        case MetricAxiom::ZeroDiagonal:
            return "nonzero diagonal at (" + std::to_string(i) + "," + std::to_string(i) +
                   "): " + format_double(lhs);
        case MetricAxiom::Symmetry:
            return "asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + "): " +
                   format_double(lhs) + " != " + format_double(rhs);
        case MetricAxiom::Positivity:
            return "nonpositive off-diagonal at (" + std::to_string(i) + "," +
                   std::to_string(j) + "): " + format_double(lhs);
        case MetricAxiom::Triangle:
            return "triangle violation at (" + std::to_string(i) + "," + std::to_string(j) +
                   "," + std::to_string(k) + "): " + format_double(lhs) + " > " +
                   format_double(rhs);
        }
        return "unknown violation";
    }
};

struct ValidationReport {
    std::vector<MetricViolation> violations; // capped, see total
    std::size_t total = 0;

    bool ok() const { return total == 0; }

    std::string summary() const {
        if (ok()) return "ok";
        std::string s = std::to_string(total) + " violation(s)";
        for (const auto& v : violations) s += "\n  " + v.describe();
        return s;
    }
};

// Checks the metric axioms on a square matrix and reports every violation
// (recording is capped at 100 witnesses, the count is not). The triangle
// inequality is checked as d(i,j) <= d(i,k) + d(k,j) + tol in double
// arithmetic; tol = 0 demands exactness.
inline ValidationReport validate_metric(const Matrix& m, double triangle_tol = 0.0) {
    const std::size_t n = m.size();
    if (n == 0) throw InputError("validate_metric: empty matrix");
    for (const auto& row : m) {
        if (row.size() != n) throw InputError("validate_metric: matrix is not square");
        for (double x : row)
            if (!std::isfinite(x)) throw InputError("validate_metric: non-finite entry");
    }

    ValidationReport report;
    auto add = [&](MetricViolation v) {
        if (report.violations.size() < 100) report.violations.push_back(v);
        ++report.total;
    };

    for (int i = 0; i < static_cast<int>(n); ++i)
        if (m[i][i] != 0.0)
            add({MetricAxiom::ZeroDiagonal, i, i, -1, m[i][i], 0.0});
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = i + 1; j < static_cast<int>(n); ++j) {
            if (m[i][j] != m[j][i])
                add({MetricAxiom::Symmetry, i, j, -1, m[i][j], m[j][i]});
            if (m[i][j] <= 0.0)
                add({MetricAxiom::Positivity, i, j, -1, m[i][j], 0.0});
        }
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = 0; j < static_cast<int>(n); ++j) {
            if (i == j) continue;
            for (int k = 0; k < static_cast<int>(n); ++k) {
                if (k == i || k == j) continue;
                const double bound = m[i][k] + m[k][j] + triangle_tol;
                if (m[i][j] > bound)
                    add({MetricAxiom::Triangle, i, j, k, m[i][j], m[i][k] + m[k][j]});
            }
        }
    return report;
}

namespace detail {

// Floyd-Warshall-style relaxation until the matrix satisfies
// d(i,j) <= fl(d(i,k) + d(k,j)) exactly. Constructed metrics (absolute
// differences, shortest-path closures) can miss that by a few ulps from
// rounding; the fixpoint sweeps lower entries by at most that much.
inline void enforce_exact_triangle(Matrix& d) {
    const int n = static_cast<int>(d.size());
    bool changed = true;
    int guard = 0;
    while (changed && ++guard <= 64) {
        changed = false;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j || i == k || j == k) continue;
                    const double s = d[i][k] + d[k][j];
                    if (d[i][j] > s) {
                        d[i][j] = s;
                        d[j][i] = s;
                        changed = true;
                    }
                }
    }
}

} // namespace detail

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

// A finite set of named points with a validated metric. Values are
// immutable after construction; all operations on them are pure.
class FiniteMetricSpace {
public:
    static SpacePtr from_matrix(std::vector<std::string> labels, Matrix dist,
                                double triangle_tol = 0.0) {
        if (labels.size() != dist.size())
            throw InputError("FiniteMetricSpace: label/matrix size mismatch");
        auto report = validate_metric(dist, triangle_tol);
        if (!report.ok())
            throw InputError("FiniteMetricSpace: invalid metric: " + report.summary());
        return SpacePtr(new FiniteMetricSpace(std::move(labels), {}, std::move(dist)));
    }

    static SpacePtr from_matrix(Matrix dist, double triangle_tol = 0.0) {
        std::vector<std::string> labels;
        labels.reserve(dist.size());
        for (std::size_t i = 0; i < dist.size(); ++i)
            labels.push_back("p" + std::to_string(i));
        return from_matrix(std::move(labels), std::move(dist), triangle_tol);
    }

    // Finite subset of the real line, d(x,y) = |x - y|.
    static SpacePtr from_real_points(const std::vector<double>& xs) {
        const std::size_t n = xs.size();
        if (n == 0) throw InputError("from_real_points: need at least one point");
        for (double x : xs)
            if (!std::isfinite(x)) throw InputError("from_real_points: non-finite point");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (xs[i] == xs[j])
                    throw InputError("from_real_points: duplicate point " + format_double(xs[i]));

        Matrix d(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::fabs(xs[i] - xs[j]);
        detail::enforce_exact_triangle(d);

        std::vector<std::string> labels;
        labels.reserve(n);
        for (double x : xs) labels.push_back(format_double(x));
        auto report = validate_metric(d, 0.0);
        if (!report.ok())
            throw InternalError("from_real_points: construction failed validation: " +
                                report.summary());
        return SpacePtr(new FiniteMetricSpace(std::move(labels), xs, std::move(d)));
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    double dist(int i, int j) const { return dist_[i][j]; }
    const Matrix& dist_matrix() const { return dist_; }

    // Real coordinates are only present for real-line spaces.
    bool has_coords() const { return !coords_.empty(); }
    double coord(int i) const {
        if (!has_coords()) throw InputError("space has no real-line coordinates");
        return coords_.at(i);
    }
    const std::vector<double>& coords() const { return coords_; }

    double diameter() const {
        double d = 0.0;
        for (const auto& row : dist_)
            for (double x : row) d = std::max(d, x);
        return d;
    }

    // All distance values that occur, 0 included, sorted ascending.
    std::vector<double> distinct_distances() const {
        std::vector<double> vals;
        vals.reserve(dist_.size() * dist_.size());
        for (const auto& row : dist_)
            for (double x : row) vals.push_back(x);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }

private:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> coords, Matrix dist)
        : labels_(std::move(labels)), coords_(std::move(coords)), dist_(std::move(dist)) {}

    std::vector<std::string> labels_;
    std::vector<double> coords_;
    Matrix dist_;
};

inline bool spaces_equal(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    if (&a == &b) return true;
    return a.labels() == b.labels() && a.coords() == b.coords() &&
           a.dist_matrix() == b.dist_matrix();
}

inline bool spaces_equal(const SpacePtr& a, const SpacePtr& b) {
    if (!a || !b) throw InputError("spaces_equal: null space");
    return spaces_equal(*a, *b);
}

inline SpacePtr from_real_points(const std::vector<double>& xs) {
    return FiniteMetricSpace::from_real_points(xs);
}

// Truncated metric min(d, c). Truncation preserves all metric axioms, and
// it preserves the exact-arithmetic triangle property of the input, so the
// result is revalidated at tolerance 0. Coordinates are dropped: the
// truncated metric is no longer the real-line metric.
inline SpacePtr truncate_metric(const FiniteMetricSpace& space, double c) {
    if (!(c > 0.0)) throw InputError("truncate_metric: c must be positive");
    Matrix d = space.dist_matrix();
    for (auto& row : d)
        for (double& x : row) x = std::min(x, c);
    return FiniteMetricSpace::from_matrix(space.labels(), std::move(d), 0.0);
}

inline SpacePtr truncate_metric(const SpacePtr& space, double c) {
    if (!space) throw InputError("truncate_metric: null space");
    return truncate_metric(*space, c);
}

// A map between finite metric spaces, given by the image index of every
// source point.
class PointMap {
public:
    PointMap(SpacePtr source, SpacePtr target, std::vector<int> image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
        if (!source_ || !target_) throw InputError("PointMap: null space");
        if (static_cast<int>(image_.size()) != source_->size())
            throw InputError("PointMap: image length must equal source size");
        for (int v : image_)
            if (v < 0 || v >= target_->size())
                throw InputError("PointMap: image index out of range");
    }

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    int apply(int i) const { return image_.at(i); }
    const std::vector<int>& image() const { return image_; }

private:
    SpacePtr source_;
    SpacePtr target_;
    std::vector<int> image_;
};

// outer o inner (inner applied first).
inline PointMap compose(const PointMap& outer, const PointMap& inner) {
    if (!spaces_equal(inner.target(), outer.source()))
        throw InputError("compose: inner target differs from outer source");
    std::vector<int> image;
    image.reserve(inner.image().size());
    for (int v : inner.image()) image.push_back(outer.apply(v));
    return PointMap(inner.source(), outer.target(), std::move(image));
}

// Smallest L with d_Y(phi(x), phi(y)) <= L d_X(x, y); 0 on a singleton.
inline double lipschitz_constant_of_map(const PointMap& phi) {
    const auto& X = *phi.source();
    const auto& Y = *phi.target();
    double L = 0.0;
    for (int i = 0; i < X.size(); ++i)
        for (int j = i + 1; j < X.size(); ++j)
            L = std::max(L, Y.dist(phi.apply(i), phi.apply(j)) / X.dist(i, j));
    return L;
}

} // namespace dudleylab
