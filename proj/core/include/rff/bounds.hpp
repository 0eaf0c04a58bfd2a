#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rff/compact_set.hpp"
#include "rff/multi_index.hpp"
#include "rff/spectral.hpp"

namespace rff {

// A fully evaluated finite-sample bound: the value, the named intermediate
// constants that produced it, which result it came from (T1, C1, T2, T3, T4),
// and the confidence input (τ, or ε for T4) echoed back. Bounds beyond the
// trivial cap are reported verbatim with `vacuous` set, never clamped.
struct BoundReport {
    double bound_value = 0.0;
    std::map<std::string, double> constituents;
    std::string theorem_tag;
    double confidence = 0.0;
    bool vacuous      = false;
};

// h(d,|S|,σ) = 32√(2d log(2|S|+1)) + 32√(2d log(σ+1)) + 16√(2d / log(2|S|+1)).
// Requires diam > 0 so the reciprocal log term is defined.
double thm1_h(int d, double diam, double sigma);

// Uniform kernel-error tail: bound (h + √(2τ))/√m holding with prob >= 1−e^{−τ}.
BoundReport thm1_bound(int d, double diam, double sigma, std::int64_t m, double tau);

// (π^{d/2} diam^d / (2^d Γ(d/2+1)))^{2/r}, the enclosing-ball volume factor,
// evaluated through log-gamma so large d cannot overflow.
double vol_factor(int d, double diam, double r);

// L^r bound obtained from the uniform bound times the volume factor (r >= 1).
BoundReport cor1_bound(int d, double diam, double sigma, std::int64_t m, double tau, double r);

// Khintchine constant C′_r: 1 on (1,2], √2 [Γ((r+1)/2)/√π]^{1/r} on [2,∞).
double khintchine(double r);

// Direct L^r tail (r > 1): vol_factor · (C′_r m^{−(1−max{1/2,1/r})} + √(2τ)/√m).
// No σ and no log-diameter factor enters.
BoundReport thm2_bound(int d, double diam, std::int64_t m, double tau, double r);

// H(d,p,q,|S|) = 32√(2d T_{2p,2q}) [√U + 1/(2√U) + √(log(√C_{2p,2q}+1))] with
// U = log(2|S| T_{2p,2q}^{−1/2} + 1). Reduces to thm1_h when p=q=0.
BoundReport thm3_H(int d, const MultiIndex& p, const MultiIndex& q, double diam,
                   const SpectralMeasure& measure);

// Derivative-error tail: (H + T_{p,q}√(2τ))/√m.
BoundReport thm3_bound(int d, const MultiIndex& p, const MultiIndex& q, double diam,
                       const SpectralMeasure& measure, std::int64_t m, double tau);

// Certified-valid Bernstein moment parameters for bounded-support measures:
// L = 4 T_{p,q} (the summand deviation is bounded by 2 T_{p,q} = L/2) and
// variance parameter σ² = T_{2p,2q}. The loosest certified pair; a tighter
// measure-specific σ² may be passed to thm4_failure_prob manually.
struct BernsteinParams {
    double sigma2;
    double L;
};
BernsteinParams bernstein_params(const SpectralMeasure& measure, const MultiIndex& p,
                                 const MultiIndex& q);

// F_d = d^{−d/(d+1)} + d^{1/(d+1)} (F_1 = 2, decreasing in d).
double net_constant_F(int d);

// Failure probability of {sup error >= eps} under the Bernstein route:
//   2^{d−1} e^{−mε²/(8σ²(1+εL/(2σ²)))}
//   + F_d 2^{(4d−1)/(d+1)} [|S|(D+E)/ε]^{d/(d+1)} e^{−mε²/(8(d+1)σ²(1+εL/(2σ²)))}.
// Values above 1 are returned as-is (vacuous bound).
double thm4_failure_prob(int d, double eps, std::int64_t m, double diam, double sigma2_b,
                         double L_b, double D, double E);

// Report wrapper deriving σ², L from bernstein_params and the D/E inputs from
// the caller (typically gradient_sup_D and moment_E).
BoundReport thm4_report(int d, const MultiIndex& p, const MultiIndex& q, double eps,
                        std::int64_t m, const SpectralMeasure& measure, const CompactSet& s,
                        double sigma2_b, double L_b, double D, double E);

// Euclidean-ball covering bound N(B(·,R), ε) <= (4R/ε + 1)^d.
double covering_upper(double R, double eps, int d);

// For a > 1: ∫₀¹ √(log(a/ε)) dε <= √(log a) + 1/(2√(log a)); returns the RHS.
double entropy_integral_upper(double a);

} // namespace rff
