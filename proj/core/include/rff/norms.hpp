#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "rff/compact_set.hpp"
#include "rff/feature_set.hpp"
#include "rff/features.hpp"
#include "rff/multi_index.hpp"
#include "rff/spectral.hpp"

namespace rff {

enum class NormKind { Sup, Lr };

// Measured approximation error with its certificate. For the sup norm the
// certified upper bound is value + certificate_slack >= true sup; for L^r the
// slack is 0 (tensor grid) or the Monte Carlo standard error.
struct ErrorReport {
    double value             = 0.0;
    double certificate_slack = 0.0;
    std::int64_t grid_points = 0;
    double lipschitz_bound   = 0.0; // sup norm only
    NormKind norm_kind       = NormKind::Sup;
    double r                 = 0.0; // Lr only
};

struct QuadratureSpec {
    enum class Method { TensorGrid, MonteCarlo };
    Method method   = Method::TensorGrid;
    std::int64_t n  = 0; // points per axis (tensor) / total samples (MC); 0 = default
    std::uint64_t seed = 0;

    static QuadratureSpec tensor_grid(std::int64_t n_per_axis = 0) {
        return {Method::TensorGrid, n_per_axis, 0};
    }
    static QuadratureSpec monte_carlo(std::int64_t n, std::uint64_t seed) {
        return {Method::MonteCarlo, n, seed};
    }
};

inline constexpr std::int64_t default_grid_cap = std::int64_t{1} << 24;

// Scalar field of the difference variable z ∈ S_Δ.
using DifferenceField = std::function<double(std::span<const double>)>;

// D̂_{p,q,S}: sup over conv(S_Δ) of ‖∇ ∂^{p,q}k(z)‖₂. Closed form (radial
// maximization) for GaussianIso with p=q=0; otherwise a 65-points-per-axis
// grid maximization with one refinement pass. `exact` reports which route ran;
// grid estimates are doubled by the certificate users.
double gradient_sup_D(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      const CompactSet& s, bool* exact = nullptr);

// (1/m) Σⱼ |ωⱼ^{p+q}| ‖ωⱼ‖₂ — the empirical gradient term of the summands.
double empirical_gradient_term(const FeatureSet& features, const MultiIndex& p,
                               const MultiIndex& q);

// A_{p,q} = √((1/m) Σⱼ |ωⱼ^{2(p+q)}| ‖ωⱼ‖₂²), the L²(Λ_m) smoothness constant.
double a_pq(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q);

// Lipschitz upper bound for z ↦ ∂^{p,q}k(z) − s^{p,q}(z): D term plus the
// empirical gradient term. Grid-estimated D is conservatively doubled.
double empirical_lipschitz(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                           const SpectralMeasure& measure, const CompactSet& s);

// Engine behind sup_error_certified, with the field injectable for tests.
// Grid spacing h satisfies L·h·√d/2 <= target_slack; the reported value is the
// grid max and the slack the certified remainder. `even_field` halves the grid
// along axis 0 (valid when |field(−z)| = |field(z)|).
ErrorReport certified_sup_on_difference_set(const DifferenceField& field, const CompactSet& s,
                                            double lipschitz, double target_slack,
                                            std::int64_t grid_cap = default_grid_cap,
                                            bool even_field = true);

// Certified sup of |∂^{p,q}k − s^{p,q}| over S×S via the shift-invariant
// reduction to S_Δ. For ball sets the certificate covers the enclosing box of
// S_Δ (conservative). Throws GridBudgetExceededError when the required grid
// exceeds grid_cap; raise target_slack in that case.
ErrorReport sup_error_certified(const FeatureSet& features, const MultiIndex& p,
                                const MultiIndex& q, const SpectralMeasure& measure,
                                const CompactSet& s, double target_slack,
                                std::int64_t grid_cap = default_grid_cap);

// Engine behind lr_error: ‖field‖_{L^r(S×S)} for a shift-invariant field
// e(x,y) = field(x−y), via tensor-grid midpoint quadrature (d <= 3) or Monte
// Carlo. Injectable for tests.
ErrorReport lr_norm_shift_invariant(const DifferenceField& field, const CompactSet& s, double r,
                                    QuadratureSpec quad = {});

// (∫_S∫_S |∂^{p,q}k − s^{p,q}|^r dx dy)^{1/r}.
ErrorReport lr_error(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                     const SpectralMeasure& measure, const CompactSet& s, double r,
                     QuadratureSpec quad = {});

// The estimator-minus-target field used by both norms (exposed for tests).
DifferenceField error_field(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                            const SpectralMeasure& measure);

} // namespace rff
