#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gljel {

// One univariate sample. Keeps the observations in their original order and
// caches a sorted copy plus its prefix sums, so order statistics and partial
// sums below a threshold are cheap to query repeatedly.
class Sample {
public:
    explicit Sample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw std::invalid_argument("empty sample");
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("non-finite value in sample");
            }
        }
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
        prefix_.resize(sorted_.size() + 1);
        prefix_[0] = 0.0;
        for (std::size_t i = 0; i < sorted_.size(); ++i) {
            prefix_[i + 1] = prefix_[i] + sorted_[i];
        }
    }

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& sorted() const { return sorted_; }

    double sum() const { return prefix_.back(); }
    double mean() const { return sum() / static_cast<double>(size()); }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

    /// Sum of all observations <= threshold.
    double sum_below(double threshold) const {
        auto it = std::upper_bound(sorted_.begin(), sorted_.end(), threshold);
        return prefix_[static_cast<std::size_t>(it - sorted_.begin())];
    }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
    std::vector<double> prefix_;
};

// Evaluation grid for curve ordinates: strictly increasing points in [0,1].
class TGrid {
public:
    explicit TGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.empty()) {
            throw std::invalid_argument("empty t grid");
        }
        double prev = -1.0;
        for (double t : points_) {
            if (!(t >= 0.0 && t <= 1.0)) {
                throw std::domain_error("t must lie in [0,1]");
            }
            if (t <= prev) {
                throw std::invalid_argument("t grid must be strictly increasing");
            }
            prev = t;
        }
    }

    /// n equally spaced points i/n, i = 1..n (so uniform(5) = .2,.4,.6,.8,1).
    static TGrid uniform(std::size_t n) {
        if (n == 0) {
            throw std::invalid_argument("empty t grid");
        }
        std::vector<double> pts(n);
        for (std::size_t i = 1; i <= n; ++i) {
            pts[i - 1] = static_cast<double>(i) / static_cast<double>(n);
        }
        return TGrid(std::move(pts));
    }

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<double> points_;
};

} // namespace gljel
