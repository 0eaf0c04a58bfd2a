#include "rff/features.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace rff {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Orders the 1-d closed forms support; gradients of order-4 partials need 5.
constexpr int max_closed_form_order = 6;

// He_n(t), probabilists' Hermite polynomial, by the three-term recursion.
double hermite(int n, double t) {
    double prev = 1.0; // He_0
    if (n == 0) return prev;
    double cur = t; // He_1
    for (int k = 1; k < n; ++k) {
        const double next = t * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur  = next;
    }
    return cur;
}

// d^n/dz^n exp(−z²/(2γ²)) = (−1/γ)^n He_n(z/γ) exp(−z²/(2γ²)).
double gaussian_psi_derivative_1d(int n, double z, double gamma) {
    const double t    = z / gamma;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(1.0 / gamma, n) * hermite(n, t) * std::exp(-0.5 * t * t);
}

// d^n/du^n [sin(u)/u]. Taylor series near 0 (termwise-differentiated sinc
// series), closed trigonometric/rational form away from it.
double sinc_derivative(int n, double u) {
    if (n == 0 && u == 0.0) return 1.0;
    if (std::abs(u) < 1.0) {
        // term j of sinc: (−1)^j u^{2j}/(2j+1)!  →  derivative term:
        // (−1)^j (2j)(2j−1)···(2j−n+1) u^{2j−n}/(2j+1)!
        double sum   = 0.0;
        const int j0 = (n + 1) / 2;
        double fact  = 1.0; // (2j+1)! running value
        for (int t = 2; t <= 2 * j0 + 1; ++t) fact *= t;
        for (int j = j0; j < j0 + 30; ++j) {
            double falling = 1.0;
            for (int t = 0; t < n; ++t) falling *= static_cast<double>(2 * j - t);
            const double term =
                ((j % 2) ? -1.0 : 1.0) * falling * std::pow(u, 2 * j - n) / fact;
            sum += term;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
            fact *= static_cast<double>(2 * j + 2) * static_cast<double>(2 * j + 3);
        }
        return sum;
    }
    // Represent the n-th derivative as Σ_k u^{−k} (a_k sin u + b_k cos u),
    // starting from a_1 = 1 and differentiating n times:
    //   (u^{−k} sin u)' = −k u^{−k−1} sin u + u^{−k} cos u
    //   (u^{−k} cos u)' = −k u^{−k−1} cos u − u^{−k} sin u
    std::array<double, max_closed_form_order + 2> a{}, b{};
    a[1] = 1.0;
    for (int step = 0; step < n; ++step) {
        std::array<double, max_closed_form_order + 2> na{}, nb{};
        for (int k = 1; k <= step + 1; ++k) {
            if (a[static_cast<std::size_t>(k)] != 0.0) {
                na[static_cast<std::size_t>(k + 1)] += -k * a[static_cast<std::size_t>(k)];
                nb[static_cast<std::size_t>(k)] += a[static_cast<std::size_t>(k)];
            }
            if (b[static_cast<std::size_t>(k)] != 0.0) {
                nb[static_cast<std::size_t>(k + 1)] += -k * b[static_cast<std::size_t>(k)];
                na[static_cast<std::size_t>(k)] += -b[static_cast<std::size_t>(k)];
            }
        }
        a = na;
        b = nb;
    }
    const double s = std::sin(u), c = std::cos(u);
    double sum  = 0.0;
    double upow = 1.0 / u;
    for (int k = 1; k <= n + 1; ++k) {
        sum += upow * (a[static_cast<std::size_t>(k)] * s + b[static_cast<std::size_t>(k)] * c);
        upow /= u;
    }
    return sum;
}

// Central-difference stencil for the k-th derivative, O(h²) accurate.
struct Stencil {
    std::array<int, 7> offsets;
    std::array<double, 7> coeffs; // to be divided by h^k
    int size;
};

const Stencil& stencil_for(int k) {
    static const std::array<Stencil, 6> table = {{
        {{0}, {1.0}, 1},
        {{-1, 1}, {-0.5, 0.5}, 2},
        {{-1, 0, 1}, {1.0, -2.0, 1.0}, 3},
        {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}, 4},
        {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}, 5},
        {{-3, -2, -1, 1, 2, 3}, {-0.5, 2.0, -2.5, 2.5, -2.0, 0.5}, 6},
    }};
    return table[static_cast<std::size_t>(k)];
}

// Mixed partial of ψ by composing per-axis central stencils at step h.
double fd_once(const SpectralMeasure& measure, const MultiIndex& order,
               std::span<const double> z, double h) {
    const int d = static_cast<int>(z.size());
    std::vector<int> active;
    for (int i = 0; i < d; ++i)
        if (order[i] > 0) active.push_back(i);
    std::vector<double> pt(z.begin(), z.end());

    double scale = 1.0;
    for (int i : active) scale /= std::pow(h, order[i]);

    // Depth-first product over the active-axis stencils.
    double acc = 0.0;
    auto rec = [&](auto&& self, std::size_t k, double coeff) -> void {
        if (k == active.size()) {
            acc += coeff * measure.characteristic(pt);
            return;
        }
        const int axis     = active[k];
        const Stencil& st  = stencil_for(order[axis]);
        const double saved = pt[static_cast<std::size_t>(axis)];
        for (int s = 0; s < st.size; ++s) {
            pt[static_cast<std::size_t>(axis)] = saved + st.offsets[static_cast<std::size_t>(s)] * h;
            self(self, k + 1, coeff * st.coeffs[static_cast<std::size_t>(s)]);
        }
        pt[static_cast<std::size_t>(axis)] = saved;
    };
    rec(rec, 0, 1.0);
    return acc * scale;
}

} // namespace

std::vector<double> embed(const FeatureSet& features, const MultiIndex& p,
                          std::span<const double> x) {
    if (static_cast<int>(x.size()) != features.dim() || p.dim() != features.dim())
        throw DimensionMismatchError("embed: dimension mismatch");
    const std::int64_t m = features.size();
    const double inv     = 1.0 / std::sqrt(static_cast<double>(m));
    const int a          = p.order();
    std::vector<double> out(2 * static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const auto w     = features.row(j);
        const double c   = inv * pow_multi(w, p);
        const double arg = dot(w, x);
        out[static_cast<std::size_t>(j)]     = c * phase(a, arg);
        out[static_cast<std::size_t>(j + m)] = c * phase(3 + a, arg);
    }
    return out;
}

double estimate_kernel(const FeatureSet& features, std::span<const double> x,
                       std::span<const double> y) {
    if (static_cast<int>(x.size()) != features.dim() ||
        static_cast<int>(y.size()) != features.dim())
        throw DimensionMismatchError("estimate_kernel: dimension mismatch");
    const std::int64_t m = features.size();
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
    double s = 0.0;
    for (std::int64_t j = 0; j < m; ++j) s += std::cos(dot(features.row(j), z));
    return s / static_cast<double>(m);
}

double estimate_derivative_z(const FeatureSet& features, const MultiIndex& p,
                             const MultiIndex& q, std::span<const double> z) {
    if (static_cast<int>(z.size()) != features.dim() || p.dim() != features.dim() ||
        q.dim() != features.dim())
        throw DimensionMismatchError("estimate_derivative: dimension mismatch");
    const MultiIndex n = p.plus(q);
    const double sign  = parity_sign(q);
    const int a        = n.order();
    const std::int64_t m = features.size();
    double s = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
        const auto w = features.row(j);
        s += pow_multi(w, n) * phase(a, dot(w, z));
    }
    return sign * s / static_cast<double>(m);
}

double estimate_derivative(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                           std::span<const double> x, std::span<const double> y) {
    std::vector<double> z(x.size());
    if (x.size() != y.size()) throw DimensionMismatchError("estimate_derivative: x/y mismatch");
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
    return estimate_derivative_z(features, p, q, z);
}

void estimate_derivative_batch(const FeatureSet& features, const MultiIndex& p,
                               const MultiIndex& q, std::span<const double> zs, std::int64_t n,
                               std::span<double> out) {
    const int d = features.dim();
    const MultiIndex sum_pq = p.plus(q);
    const double sign       = parity_sign(q);
    const int a             = sum_pq.order();
    const std::int64_t m    = features.size();
    const double inv_m      = 1.0 / static_cast<double>(m);

    std::vector<double> coef(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j)
        coef[static_cast<std::size_t>(j)] = pow_multi(features.row(j), sum_pq);

    for (std::int64_t i = 0; i < n; ++i) {
        const std::span<const double> z{zs.data() + static_cast<std::size_t>(i) * d,
                                        static_cast<std::size_t>(d)};
        double s = 0.0;
        for (std::int64_t j = 0; j < m; ++j)
            s += coef[static_cast<std::size_t>(j)] * phase(a, dot(features.row(j), z));
        out[static_cast<std::size_t>(i)] = sign * s * inv_m;
    }
}

double fd_derivative_z(const SpectralMeasure& measure, const MultiIndex& order,
                       std::span<const double> z) {
    for (int i = 0; i < order.dim(); ++i)
        if (order[i] > 5)
            throw UnsupportedOrderError("fd_derivative_z: per-axis order above 5");
    if (order.is_zero()) return measure.characteristic(z);
    const double h = (order.order() <= 2) ? 1e-3 : 1e-2;
    const double coarse = fd_once(measure, order, z, h);
    const double fine   = fd_once(measure, order, z, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0; // one Richardson level kills the h² term
}

double psi_derivative(const SpectralMeasure& measure, const MultiIndex& order,
                      std::span<const double> z) {
    if (order.dim() != measure.dim() || static_cast<int>(z.size()) != measure.dim())
        throw DimensionMismatchError("psi_derivative: dimension mismatch");
    if (order.order() > max_closed_form_order)
        throw UnsupportedOrderError("psi_derivative: order above " +
                                    std::to_string(max_closed_form_order));
    switch (measure.kind()) {
        case SpectralMeasure::Kind::Discrete: {
            // ∂^n Σ wᵢ cos(ωᵢᵀz) = Σ wᵢ ωᵢ^n h_{|n|}(ωᵢᵀz), exact.
            double s = 0.0;
            for (std::size_t i = 0; i < measure.atoms().size(); ++i) {
                const auto& w = measure.atoms()[i];
                s += measure.weights()[i] * pow_multi(w, order) *
                     phase(order.order(), dot(w, z));
            }
            return s;
        }
        case SpectralMeasure::Kind::GaussianIso:
            if (measure.dim() == 1)
                return gaussian_psi_derivative_1d(order.order(), z[0], measure.gamma());
            return fd_derivative_z(measure, order, z);
        case SpectralMeasure::Kind::UniformBox:
            if (measure.dim() == 1) {
                const double R = measure.half_width();
                return std::pow(R, order.order()) * sinc_derivative(order.order(), R * z[0]);
            }
            return fd_derivative_z(measure, order, z);
    }
    return 0.0;
}

double target_derivative_z(const SpectralMeasure& measure, const MultiIndex& p,
                           const MultiIndex& q, std::span<const double> z) {
    const MultiIndex n = p.plus(q);
    if (n.order() > max_derivative_order)
        throw UnsupportedOrderError("target_derivative: |p+q| above " +
                                    std::to_string(max_derivative_order));
    // ∂x^p ∂y^q ψ(x−y): each y-derivative contributes one −1.
    return parity_sign(q) * psi_derivative(measure, n, z);
}

double target_derivative(const SpectralMeasure& measure, const MultiIndex& p,
                         const MultiIndex& q, std::span<const double> x,
                         std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatchError("target_derivative: x/y mismatch");
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
    return target_derivative_z(measure, p, q, z);
}

} // namespace rff
