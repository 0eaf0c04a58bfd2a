#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rff/errors.hpp"
#include "rff/multi_index.hpp"

namespace rff {

class FeatureSet;

// Spectral probability measure Λ on R^d. Three shipped families:
//   GaussianIso  — N(0, γ^{-2} I); kernel ψ(z) = exp(−‖z‖²/(2γ²)). Unbounded support.
//   UniformBox   — uniform on [−R, R]^d; ψ(z) = Π sin(R zᵢ)/(R zᵢ). Bounded support.
//   Discrete     — finite atom set with weights; ψ(z) = Σ wᵢ cos(ωᵢᵀz). Bounded support.
// Cauchy/Laplacian is deliberately not shipped: its second moment is infinite,
// which makes the uniform tail bound vacuous.
// Immutable after construction; safe to share across threads.
class SpectralMeasure {
public:
    enum class Kind { GaussianIso, UniformBox, Discrete };

    static SpectralMeasure gaussian_iso(int d, double gamma);
    static SpectralMeasure uniform_box(int d, double half_width);
    static SpectralMeasure discrete(std::vector<std::vector<double>> atoms,
                                    std::vector<double> weights);

    Kind kind() const { return kind_; }
    int dim() const { return d_; }
    bool bounded_support() const { return kind_ != Kind::GaussianIso; }

    double gamma() const { return gamma_; }      // GaussianIso only
    double half_width() const { return half_width_; } // UniformBox only
    const std::vector<std::vector<double>>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    // Characteristic function ψ(z) = ∫ cos(ωᵀz) dΛ(ω). ψ(0)=1, ψ even, |ψ|≤1.
    double characteristic(std::span<const double> z) const;

    // Provenance tag, e.g. "gaussian_iso(d=2,gamma=1.5)".
    std::string id() const;

private:
    SpectralMeasure() = default;
    Kind kind_ = Kind::GaussianIso;
    int d_     = 0;
    double gamma_      = 0.0;
    double half_width_ = 0.0;
    std::vector<std::vector<double>> atoms_;
    std::vector<double> weights_;
};

// Moment functionals of Λ consumed by the bound calculators. Entries left as
// NaN were not requested / are not defined for the variant. `exact` is false
// only when a Monte Carlo fallback produced the value.
struct MomentReport {
    double sigma2  = std::numeric_limits<double>::quiet_NaN(); // ∫‖ω‖² dΛ
    double sup_T   = std::numeric_limits<double>::quiet_NaN(); // sup_{supp Λ} |ω^{p+q}|
    double cross_C = std::numeric_limits<double>::quiet_NaN(); // E[|ω^{p+q}| ‖ω‖₂²]
    double cross_E = std::numeric_limits<double>::quiet_NaN(); // E[|ω^{p+q}| ‖ω‖₂]
    bool exact               = true;
    std::uint64_t mc_samples = 0;
};

// m i.i.d. draws from Λ; a pure function of (measure, m, seed).
FeatureSet sample_frequencies(const SpectralMeasure& measure, std::int64_t m, std::uint64_t seed);

// σ² = ∫‖ω‖² dΛ. Closed form for every shipped variant.
double second_moment(const SpectralMeasure& measure);

// T_{p,q} = sup_{ω ∈ supp Λ} |ω^{p+q}|. Equals 1 when p=q=0 for any Λ;
// otherwise requires bounded support (UnboundedSupportError for GaussianIso).
double sup_moment_T(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q);

// C_{p,q} = E[|ω^{p+q}| ‖ω‖₂²]. All shipped variants have closed forms.
MomentReport moment_C(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      std::uint64_t mc_samples = 0, std::uint64_t seed = 0);

// E_{p,q} = E[|ω^{p+q}| ‖ω‖₂]. Closed form for Discrete and for d=1; Monte
// Carlo (explicit mc_samples required) for product measures with d >= 2.
MomentReport moment_E(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      std::uint64_t mc_samples = 0, std::uint64_t seed = 0);

inline double characteristic_fn(const SpectralMeasure& measure, std::span<const double> z) {
    return measure.characteristic(z);
}

// All-in-one report (used by the CLI `moments` subcommand). sup_T is left NaN
// when the support is unbounded and p+q != 0.
MomentReport moments_report(const SpectralMeasure& measure, const MultiIndex& p,
                            const MultiIndex& q, std::uint64_t mc_samples = 0,
                            std::uint64_t seed = 0);

} // namespace rff
