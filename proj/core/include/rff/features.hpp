#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "rff/feature_set.hpp"
#include "rff/multi_index.hpp"
#include "rff/spectral.hpp"

namespace rff {

// Highest derivative order |p+q| the target oracle certifies.
inline constexpr int max_derivative_order = 4;

// Phase-shifted cosine h_a(t) = cos(πa/2 + t), evaluated through the
// 4-periodic table h_0=cos, h_1=−sin, h_2=−cos, h_3=sin (h_a = h_{a mod 4}).
inline double phase(int a, double t) {
    switch (((a % 4) + 4) % 4) {
        case 0: return std::cos(t);
        case 1: return -std::sin(t);
        case 2: return -std::cos(t);
        default: return std::sin(t);
    }
}

// Derivative feature map φ^p(x) ∈ R^{2m}:
//   coordinate j   = (1/√m) ωⱼ^p h_{|p|}(ωⱼᵀx),      j = 1..m
//   coordinate j+m = (1/√m) ωⱼ^p h_{3+|p|}(ωⱼᵀx).
// For p = 0 this is the standard cos/sin random Fourier map. The paired
// cos/sin form is used throughout (never the single cos(ωᵀx + b) variant,
// which is not shift invariant).
std::vector<double> embed(const FeatureSet& features, const MultiIndex& p,
                          std::span<const double> x);

// k̂(x,y) = (1/m) Σⱼ cos(ωⱼᵀ(x−y)); equals ⟨φ^0(x), φ^0(y)⟩.
double estimate_kernel(const FeatureSet& features, std::span<const double> x,
                       std::span<const double> y);

// s^{p,q}(x,y) = (1/m) Σⱼ ωⱼ^p (−ωⱼ)^q h_{|p+q|}(ωⱼᵀ(x−y)); equals
// ⟨φ^p(x), φ^q(y)⟩ up to floating-point roundoff.
double estimate_derivative(const FeatureSet& features, const MultiIndex& p, const MultiIndex& q,
                           std::span<const double> x, std::span<const double> y);

// Shift-invariant form of the estimator at z = x−y.
double estimate_derivative_z(const FeatureSet& features, const MultiIndex& p,
                             const MultiIndex& q, std::span<const double> z);

// Vectorized path over many difference points (row-major n×d). Deterministic
// evaluation order; used by the norm grids.
void estimate_derivative_batch(const FeatureSet& features, const MultiIndex& p,
                               const MultiIndex& q, std::span<const double> zs, std::int64_t n,
                               std::span<double> out);

// ∂^{p+q} ψ(z), the partial derivative of the characteristic function.
// Discrete: exact finite sum for any order. GaussianIso / UniformBox in d=1:
// closed form (orders up to 6, internal gradients need |p+q|+1). Otherwise:
// central finite differences of ψ with one Richardson level.
double psi_derivative(const SpectralMeasure& measure, const MultiIndex& order,
                      std::span<const double> z);

// Exact ∂^{p,q} k(x,y) = (−1)^{|q|} ∂^{p+q}ψ(x−y) for |p+q| <= 4.
double target_derivative(const SpectralMeasure& measure, const MultiIndex& p,
                         const MultiIndex& q, std::span<const double> x,
                         std::span<const double> y);
double target_derivative_z(const SpectralMeasure& measure, const MultiIndex& p,
                           const MultiIndex& q, std::span<const double> z);

// The finite-difference route on its own (independent of the closed forms);
// step 1e-3 for total order <= 2, 1e-2 for orders 3-5, one Richardson level.
double fd_derivative_z(const SpectralMeasure& measure, const MultiIndex& order,
                       std::span<const double> z);

} // namespace rff
