#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rff/errors.hpp"

namespace rff {

// Axis-aligned box or Euclidean ball S ⊂ R^d. Immutable.
// Diameter |S| is the Euclidean one: sup_{x,y∈S} ‖x−y‖₂.
class CompactSet {
public:
    enum class Shape { Box, Ball };

    static CompactSet box(std::vector<double> lower, std::vector<double> upper) {
        if (lower.empty() || lower.size() != upper.size())
            throw InvalidParameterError("CompactSet::box: lower/upper length mismatch");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i]))
                throw InvalidParameterError("CompactSet::box: lower must be <= upper");
        CompactSet s;
        s.shape_ = Shape::Box;
        s.a_     = std::move(lower);
        s.b_     = std::move(upper);
        return s;
    }

    static CompactSet ball(std::vector<double> center, double radius) {
        if (center.empty()) throw InvalidParameterError("CompactSet::ball: empty center");
        if (!(radius > 0.0)) throw InvalidParameterError("CompactSet::ball: radius must be > 0");
        CompactSet s;
        s.shape_  = Shape::Ball;
        s.a_      = std::move(center);
        s.radius_ = radius;
        return s;
    }

    Shape shape() const { return shape_; }
    bool is_box() const { return shape_ == Shape::Box; }
    int dim() const { return static_cast<int>(a_.size()); }

    const std::vector<double>& lower() const { return a_; }
    const std::vector<double>& upper() const { return b_; }
    const std::vector<double>& center() const { return a_; }
    double radius() const { return radius_; }

    double diameter() const {
        if (shape_ == Shape::Ball) return 2.0 * radius_;
        double s2 = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const double w = b_[i] - a_[i];
            s2 += w * w;
        }
        return std::sqrt(s2);
    }

    double volume() const {
        if (shape_ == Shape::Box) {
            double v = 1.0;
            for (std::size_t i = 0; i < a_.size(); ++i) v *= (b_[i] - a_[i]);
            return v;
        }
        // Unit-ball volume π^{d/2}/Γ(d/2+1), via log-gamma.
        const double d = static_cast<double>(dim());
        return std::exp(0.5 * d * std::log(std::numbers::pi) + d * std::log(radius_) -
                        std::lgamma(0.5 * d + 1.0));
    }

    // S_Δ = {x−y : x,y ∈ S}: Box(lower−upper, upper−lower) or Ball(0, 2r).
    // Convex and symmetric about 0; |S_Δ| ≤ 2|S|.
    CompactSet difference_set() const {
        if (shape_ == Shape::Ball)
            return ball(std::vector<double>(a_.size(), 0.0), 2.0 * radius_);
        std::vector<double> lo(a_.size()), hi(a_.size());
        for (std::size_t i = 0; i < a_.size(); ++i) {
            lo[i] = a_[i] - b_[i];
            hi[i] = b_[i] - a_[i];
        }
        return box(std::move(lo), std::move(hi));
    }

    void bounding_box(std::vector<double>& lo, std::vector<double>& hi) const {
        lo.assign(a_.size(), 0.0);
        hi.assign(a_.size(), 0.0);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (shape_ == Shape::Box) {
                lo[i] = a_[i];
                hi[i] = b_[i];
            } else {
                lo[i] = a_[i] - radius_;
                hi[i] = a_[i] + radius_;
            }
        }
    }

    bool contains(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != dim()) return false;
        if (shape_ == Shape::Box) {
            for (std::size_t i = 0; i < a_.size(); ++i)
                if (x[i] < a_[i] || x[i] > b_[i]) return false;
            return true;
        }
        double s2 = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const double t = x[i] - a_[i];
            s2 += t * t;
        }
        return s2 <= radius_ * radius_;
    }

    // Same shape and center, rescaled so that diameter() == target.
    CompactSet scaled_to_diameter(double target) const {
        if (!(target > 0.0)) throw InvalidParameterError("scaled_to_diameter: target must be > 0");
        if (shape_ == Shape::Ball) return ball(a_, 0.5 * target);
        const double f = target / diameter();
        std::vector<double> lo(a_.size()), hi(a_.size());
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const double c = 0.5 * (a_[i] + b_[i]);
            lo[i] = c + f * (a_[i] - c);
            hi[i] = c + f * (b_[i] - c);
        }
        return box(std::move(lo), std::move(hi));
    }

    std::string to_string() const {
        auto vec = [](const std::vector<double>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v[i]);
            }
            return s + "]";
        };
        if (shape_ == Shape::Box) return "box(" + vec(a_) + "," + vec(b_) + ")";
        return "ball(" + vec(a_) + "," + std::to_string(radius_) + ")";
    }

private:
    CompactSet() = default;
    Shape shape_ = Shape::Box;
    std::vector<double> a_; // box lower / ball center
    std::vector<double> b_; // box upper
    double radius_ = 0.0;
};

} // namespace rff
