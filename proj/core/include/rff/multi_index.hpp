#pragma once

#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rff/errors.hpp"

namespace rff {

// Per-coordinate derivative orders p ∈ N^d with the order |p| = Σ pᵢ cached.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
        for (int v : e_)
            if (v < 0) throw InvalidParameterError("MultiIndex: entries must be >= 0");
        order_ = std::accumulate(e_.begin(), e_.end(), 0);
    }

    static MultiIndex zeros(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }

    int dim() const { return static_cast<int>(e_.size()); }
    int order() const { return order_; }
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    bool is_zero() const { return order_ == 0; }
    const std::vector<int>& entries() const { return e_; }

    MultiIndex plus(const MultiIndex& o) const {
        if (o.dim() != dim()) throw DimensionMismatchError("MultiIndex::plus: dimension mismatch");
        std::vector<int> r(e_);
        for (int i = 0; i < dim(); ++i) r[static_cast<std::size_t>(i)] += o[i];
        return MultiIndex(std::move(r));
    }

    MultiIndex doubled() const {
        std::vector<int> r(e_);
        for (int& v : r) v *= 2;
        return MultiIndex(std::move(r));
    }

    MultiIndex bumped(int axis) const {
        std::vector<int> r(e_);
        r[static_cast<std::size_t>(axis)] += 1;
        return MultiIndex(std::move(r));
    }

    bool operator==(const MultiIndex&) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[static_cast<std::size_t>(i)]);
        }
        return s + ")";
    }

private:
    std::vector<int> e_;
    int order_ = 0;
};

// ω^p = Π ωᵢ^{pᵢ} with the 0^0 = 1 convention (empty product is 1).
inline double pow_multi(std::span<const double> w, const MultiIndex& p) {
    double r = 1.0;
    for (int i = 0; i < p.dim(); ++i)
        for (int k = 0; k < p[i]; ++k) r *= w[static_cast<std::size_t>(i)];
    return r;
}

inline double abs_pow_multi(std::span<const double> w, const MultiIndex& p) {
    double r = 1.0;
    for (int i = 0; i < p.dim(); ++i)
        for (int k = 0; k < p[i]; ++k) r *= std::abs(w[static_cast<std::size_t>(i)]);
    return r;
}

// (−1)^{|q|}: sign of (−ω)^q relative to ω^q. Computed from the order,
// never by negating coordinates and powering.
inline int parity_sign(const MultiIndex& q) { return (q.order() % 2 == 0) ? 1 : -1; }

} // namespace rff
