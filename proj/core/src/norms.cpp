#include "rff/norms.hpp"

#include <algorithm>
#include <cmath>

#include "rff/rng.hpp"

namespace rff {

namespace {

double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

// ‖∇ ∂^{p,q}k(z)‖₂; component i is (up to sign) ∂^{n+e_i}ψ(z).
double gradient_norm_of_target(const SpectralMeasure& measure, const MultiIndex& n,
                               std::span<const double> z) {
    double s = 0.0;
    for (int i = 0; i < n.dim(); ++i) {
        const double g = psi_derivative(measure, n.bumped(i), z);
        s += g * g;
    }
    return std::sqrt(s);
}

struct AxisGrid {
    double lo = 0.0, step = 0.0;
    std::int64_t count = 0;
};

// Inclusive-endpoint per-axis grids; `count` points cover [lo, hi] with
// spacing <= h_max. force_odd keeps the point set symmetric about the center.
AxisGrid make_axis(double lo, double hi, double h_max, bool force_odd) {
    AxisGrid g;
    const double width = hi - lo;
    std::int64_t n = (width <= 0.0 || h_max <= 0.0)
                         ? 1
                         : static_cast<std::int64_t>(std::ceil(width / h_max)) + 1;
    if (n < 2 && width > 0.0) n = 2;
    if (force_odd && n % 2 == 0) ++n;
    g.lo    = lo;
    g.count = n;
    g.step  = (n > 1) ? width / static_cast<double>(n - 1) : 0.0;
    return g;
}

} // namespace

double gradient_sup_D(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      const CompactSet& s, bool* exact) {
    const MultiIndex n = p.plus(q);
    const int d        = s.dim();
    if (exact) *exact = false;

    if (measure.kind() == SpectralMeasure::Kind::GaussianIso && n.is_zero()) {
        // ‖∇ψ(z)‖ = (‖z‖/γ²) e^{−‖z‖²/(2γ²)} is radial, increasing to ρ = γ
        // then decreasing; conv(S_Δ) contains every radius in [0, diam(S)].
        const double gamma = measure.gamma();
        const double rho   = std::min(gamma, s.diameter());
        if (exact) *exact = true;
        return (rho / (gamma * gamma)) * std::exp(-0.5 * rho * rho / (gamma * gamma));
    }

    // Grid maximization over the bounding box of conv(S_Δ) = S_Δ, 65 points
    // per axis, then one refinement pass around the argmax.
    const CompactSet sd = s.difference_set();
    std::vector<double> lo, hi;
    sd.bounding_box(lo, hi);

    constexpr std::int64_t pts = 65;
    std::vector<double> z(static_cast<std::size_t>(d), 0.0);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);

    auto sweep = [&](const std::vector<double>& a, const std::vector<double>& b,
                     std::vector<double>& argmax) {
        double best = 0.0;
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            for (int i = 0; i < d; ++i) {
                const double w = b[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)];
                z[static_cast<std::size_t>(i)] =
                    a[static_cast<std::size_t>(i)] +
                    (pts > 1 ? w * static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                                   static_cast<double>(pts - 1)
                             : 0.0);
            }
            const double g = gradient_norm_of_target(measure, n, z);
            if (g > best) {
                best   = g;
                argmax = z;
            }
            int axis = 0;
            while (axis < d) {
                if (++idx[static_cast<std::size_t>(axis)] < pts) break;
                idx[static_cast<std::size_t>(axis)] = 0;
                ++axis;
            }
            if (axis == d) break;
        }
        return best;
    };

    std::vector<double> argmax(static_cast<std::size_t>(d), 0.0);
    double best = sweep(lo, hi, argmax);

    // Refine in a one-cell window around the argmax.
    std::vector<double> rlo(static_cast<std::size_t>(d)), rhi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const double cell = (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) /
                            static_cast<double>(pts - 1);
        rlo[static_cast<std::size_t>(i)] =
            std::max(lo[static_cast<std::size_t>(i)], argmax[static_cast<std::size_t>(i)] - cell);
        rhi[static_cast<std::size_t>(i)] =
            std::min(hi[static_cast<std::size_t>(i)], argmax[static_cast<std::size_t>(i)] + cell);
    }
    std::vector<double> argmax2 = argmax;
    best = std::max(best, sweep(rlo, rhi, argmax2));
    return best;
}

double empirical_gradient_term(const FeatureSet& features, const MultiIndex& p,
                               const MultiIndex& q) {
    const MultiIndex n = p.plus(q);
    double s = 0.0;
    for (std::int64_t j = 0; j < features.size(); ++j) {
        const auto w = features.row(j);
        s += abs_pow_multi(w, n) * norm2(w);
    }
    return s / static_cast<double>(features.size());
}

double a_pq(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q) {
    const MultiIndex n2 = p.plus(q).doubled();
    double s = 0.0;
    for (std::int64_t j = 0; j < features.size(); ++j) {
        const auto w   = features.row(j);
        const double t = norm2(w);
        s += abs_pow_multi(w, n2) * t * t;
    }
    return std::sqrt(s / static_cast<double>(features.size()));
}

double empirical_lipschitz(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                           const SpectralMeasure& measure, const CompactSet& s) {
    bool exact = false;
    const double d_hat = gradient_sup_D(measure, p, q, s, &exact);
    const double d_used = exact ? d_hat : 2.0 * d_hat; // grid estimates are doubled
    return d_used + empirical_gradient_term(features, p, q);
}

ErrorReport certified_sup_on_difference_set(const DifferenceField& field, const CompactSet& s,
                                            double lipschitz, double target_slack,
                                            std::int64_t grid_cap, bool even_field) {
    if (!(target_slack > 0.0))
        throw InvalidParameterError("certified sup: target_slack must be > 0");
    const CompactSet sd = s.difference_set();
    const int d         = sd.dim();
    std::vector<double> lo, hi;
    sd.bounding_box(lo, hi);

    ErrorReport rep;
    rep.norm_kind       = NormKind::Sup;
    rep.lipschitz_bound = lipschitz;

    if (!(lipschitz > 0.0)) {
        // Constant error field (e.g. a point-mass estimator): one sample, no slack.
        std::vector<double> z(static_cast<std::size_t>(d), 0.0);
        rep.value             = std::abs(field(z));
        rep.certificate_slack = 0.0;
        rep.grid_points       = 1;
        return rep;
    }

    const double h = 2.0 * target_slack / (lipschitz * std::sqrt(static_cast<double>(d)));

    std::vector<AxisGrid> axes;
    axes.reserve(static_cast<std::size_t>(d));
    double h_actual = 0.0;
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) {
        // |field| is even in z, so axis 0 is halved to [center, hi]; the other
        // axes get symmetric (odd-count) grids so every mirrored point stays
        // on the grid.
        AxisGrid g = (even_field && i == 0)
                         ? make_axis(0.5 * (lo[0] + hi[0]), hi[0], h, false)
                         : make_axis(lo[static_cast<std::size_t>(i)],
                                     hi[static_cast<std::size_t>(i)], h, even_field);
        h_actual = std::max(h_actual, g.step);
        if (total > grid_cap / g.count)
            throw GridBudgetExceededError(
                "certified sup: grid exceeds point cap; raise target_slack");
        total *= g.count;
        axes.push_back(g);
    }

    std::vector<double> z(static_cast<std::size_t>(d), 0.0);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    double best = 0.0;
    for (;;) {
        for (int i = 0; i < d; ++i)
            z[static_cast<std::size_t>(i)] =
                axes[static_cast<std::size_t>(i)].lo +
                axes[static_cast<std::size_t>(i)].step *
                    static_cast<double>(idx[static_cast<std::size_t>(i)]);
        best = std::max(best, std::abs(field(z)));
        int axis = 0;
        while (axis < d) {
            if (++idx[static_cast<std::size_t>(axis)] < axes[static_cast<std::size_t>(axis)].count)
                break;
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }

    rep.value             = best;
    rep.certificate_slack = 0.5 * lipschitz * h_actual * std::sqrt(static_cast<double>(d));
    rep.grid_points       = total;
    return rep;
}

DifferenceField error_field(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                            const SpectralMeasure& measure) {
    // Precompute the estimator coefficients once; each call is O(m).
    const MultiIndex n = p.plus(q);
    const double sign  = parity_sign(q);
    const int a        = n.order();
    const std::int64_t m = features.size();
    std::vector<double> coef(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) coef[static_cast<std::size_t>(j)] = pow_multi(features.row(j), n);

    return [&features, &measure, p, q, n, sign, a, m,
            coef = std::move(coef)](std::span<const double> z) {
        double s = 0.0;
        for (std::int64_t j = 0; j < m; ++j) {
            double t = 0.0;
            const auto w = features.row(j);
            for (std::size_t i = 0; i < z.size(); ++i) t += w[i] * z[i];
            s += coef[static_cast<std::size_t>(j)] * phase(a, t);
        }
        const double est = sign * s / static_cast<double>(m);
        return target_derivative_z(measure, p, q, z) - est;
    };
}

ErrorReport sup_error_certified(const FeatureSet& features, const MultiIndex& p,
                                const MultiIndex& q, const SpectralMeasure& measure,
                                const CompactSet& s, double target_slack,
                                std::int64_t grid_cap) {
    const double L = empirical_lipschitz(features, p, q, measure, s);
    return certified_sup_on_difference_set(error_field(features, p, q, measure), s, L,
                                           target_slack, grid_cap, /*even_field=*/true);
}

namespace {

std::int64_t default_lr_points(int d) {
    switch (d) {
        case 1: return 64;
        case 2: return 32;
        default: return 12;
    }
}

// Tensor-grid midpoint quadrature of ∫_S∫_S |e(x−y)|^r dx dy for box S.
// Midpoint grids per axis make x−y land on (2n−1) difference values per axis
// with multiplicity n−|k|, so the 2d-dimensional sum collapses to d dimensions.
ErrorReport lr_box_tensor(const DifferenceField& field, const CompactSet& s, double r,
                          std::int64_t n_per_axis) {
    const int d = s.dim();
    const auto& lo = s.lower();
    const auto& hi = s.upper();
    std::vector<double> step(static_cast<std::size_t>(d));
    double cell = 1.0;
    for (int i = 0; i < d; ++i) {
        step[static_cast<std::size_t>(i)] =
            (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) /
            static_cast<double>(n_per_axis);
        cell *= step[static_cast<std::size_t>(i)];
    }

    const std::int64_t span = 2 * n_per_axis - 1; // k ∈ [−(n−1), n−1]
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> z(static_cast<std::size_t>(d), 0.0);
    double acc = 0.0;
    std::int64_t points = 0;
    for (;;) {
        double mult = 1.0;
        for (int i = 0; i < d; ++i) {
            const std::int64_t k = idx[static_cast<std::size_t>(i)] - (n_per_axis - 1);
            z[static_cast<std::size_t>(i)] = static_cast<double>(k) * step[static_cast<std::size_t>(i)];
            mult *= static_cast<double>(n_per_axis - std::llabs(k));
        }
        acc += mult * std::pow(std::abs(field(z)), r);
        ++points;
        int axis = 0;
        while (axis < d) {
            if (++idx[static_cast<std::size_t>(axis)] < span) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }

    ErrorReport rep;
    rep.norm_kind   = NormKind::Lr;
    rep.r           = r;
    rep.grid_points = points;
    rep.value       = std::pow(acc * cell * cell, 1.0 / r);
    return rep;
}

// Direct pair loop for ball sets (midpoint grid restricted to the ball).
ErrorReport lr_ball_tensor(const DifferenceField& field, const CompactSet& s, double r,
                           std::int64_t n_per_axis) {
    const int d = s.dim();
    std::vector<double> lo, hi;
    s.bounding_box(lo, hi);
    std::vector<double> step(static_cast<std::size_t>(d));
    double cell = 1.0;
    for (int i = 0; i < d; ++i) {
        step[static_cast<std::size_t>(i)] =
            (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) /
            static_cast<double>(n_per_axis);
        cell *= step[static_cast<std::size_t>(i)];
    }

    std::vector<std::vector<double>> inside;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    for (;;) {
        for (int i = 0; i < d; ++i)
            x[static_cast<std::size_t>(i)] =
                lo[static_cast<std::size_t>(i)] +
                (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) *
                    step[static_cast<std::size_t>(i)];
        if (s.contains(x)) inside.push_back(x);
        int axis = 0;
        while (axis < d) {
            if (++idx[static_cast<std::size_t>(axis)] < n_per_axis) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == d) break;
    }

    std::vector<double> z(static_cast<std::size_t>(d), 0.0);
    double acc = 0.0;
    for (const auto& a : inside)
        for (const auto& b : inside) {
            for (int i = 0; i < d; ++i)
                z[static_cast<std::size_t>(i)] =
                    a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
            acc += std::pow(std::abs(field(z)), r);
        }

    ErrorReport rep;
    rep.norm_kind   = NormKind::Lr;
    rep.r           = r;
    rep.grid_points = static_cast<std::int64_t>(inside.size() * inside.size());
    rep.value       = std::pow(acc * cell * cell, 1.0 / r);
    return rep;
}

ErrorReport lr_monte_carlo(const DifferenceField& field, const CompactSet& s, double r,
                           std::int64_t n, std::uint64_t seed) {
    const int d = s.dim();
    std::vector<double> lo, hi;
    s.bounding_box(lo, hi);
    Rng rng(seed);
    auto draw_point = [&](std::vector<double>& x) {
        for (;;) {
            for (int i = 0; i < d; ++i)
                x[static_cast<std::size_t>(i)] =
                    rng.uniform(lo[static_cast<std::size_t>(i)], hi[static_cast<std::size_t>(i)]);
            if (s.contains(x)) return;
        }
    };
    std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d)),
        z(static_cast<std::size_t>(d));
    double sum = 0.0, sum2 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        draw_point(x);
        draw_point(y);
        for (int j = 0; j < d; ++j)
            z[static_cast<std::size_t>(j)] =
                x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)];
        const double v = std::pow(std::abs(field(z)), r);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var  = std::max(0.0, sum2 / static_cast<double>(n) - mean * mean);
    const double se_mean = std::sqrt(var / static_cast<double>(n));
    const double vol     = s.volume();
    const double integral = mean * vol * vol;

    ErrorReport rep;
    rep.norm_kind   = NormKind::Lr;
    rep.r           = r;
    rep.grid_points = n;
    rep.value       = std::pow(integral, 1.0 / r);
    // Delta-method standard error of the r-th root.
    rep.certificate_slack =
        (integral > 0.0) ? (rep.value / (r * integral)) * se_mean * vol * vol : 0.0;
    return rep;
}

} // namespace

ErrorReport lr_norm_shift_invariant(const DifferenceField& field, const CompactSet& s, double r,
                                    QuadratureSpec quad) {
    if (!(r >= 1.0)) throw InvalidParameterError("lr norm: r must be >= 1");
    if (quad.method == QuadratureSpec::Method::TensorGrid) {
        if (s.dim() > 3)
            throw UnsupportedDimensionError("lr norm: tensor grid supports d <= 3; use monte carlo");
        const std::int64_t n = quad.n > 0 ? quad.n : default_lr_points(s.dim());
        return s.is_box() ? lr_box_tensor(field, s, r, n) : lr_ball_tensor(field, s, r, n);
    }
    const std::int64_t n = quad.n > 0 ? quad.n : 200000;
    return lr_monte_carlo(field, s, r, n, quad.seed);
}

ErrorReport lr_error(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                     const SpectralMeasure& measure, const CompactSet& s, double r,
                     QuadratureSpec quad) {
    return lr_norm_shift_invariant(error_field(features, p, q, measure), s, r, quad);
}

} // namespace rff
