#include "rff/bounds.hpp"

#include <cmath>
#include <numbers>

namespace rff {

namespace {

double sqrt2tau(double tau) {
    if (!(tau > 0.0)) throw InvalidParameterError("bound: tau must be > 0");
    return std::sqrt(2.0 * tau);
}

void require_m(std::int64_t m) {
    if (m < 1) throw InvalidParameterError("bound: m must be >= 1");
}

} // namespace

double thm1_h(int d, double diam, double sigma) {
    if (!(diam > 0.0)) throw InvalidParameterError("thm1_h: diam must be > 0");
    if (sigma < 0.0) throw InvalidParameterError("thm1_h: sigma must be >= 0");
    const double dd   = static_cast<double>(d);
    const double logA = std::log(2.0 * diam + 1.0);
    return 32.0 * std::sqrt(2.0 * dd * logA) + 32.0 * std::sqrt(2.0 * dd * std::log(sigma + 1.0)) +
           16.0 * std::sqrt(2.0 * dd / logA);
}

BoundReport thm1_bound(int d, double diam, double sigma, std::int64_t m, double tau) {
    require_m(m);
    const double h = thm1_h(d, diam, sigma);
    BoundReport rep;
    rep.theorem_tag  = "T1";
    rep.confidence   = tau;
    rep.bound_value  = (h + sqrt2tau(tau)) / std::sqrt(static_cast<double>(m));
    rep.constituents = {{"h", h}, {"sigma", sigma}};
    rep.vacuous      = rep.bound_value > 2.0; // |k̂−k| <= 2 always
    return rep;
}

double vol_factor(int d, double diam, double r) {
    if (!(r >= 1.0)) throw InvalidParameterError("vol_factor: r must be >= 1");
    if (!(diam > 0.0)) throw InvalidParameterError("vol_factor: diam must be > 0");
    const double dd = static_cast<double>(d);
    const double log_vol = 0.5 * dd * std::log(std::numbers::pi) + dd * std::log(diam) -
                           dd * std::numbers::ln2 - std::lgamma(0.5 * dd + 1.0);
    return std::exp((2.0 / r) * log_vol);
}

BoundReport cor1_bound(int d, double diam, double sigma, std::int64_t m, double tau, double r) {
    const BoundReport t1 = thm1_bound(d, diam, sigma, m, tau);
    const double vf      = vol_factor(d, diam, r);
    BoundReport rep;
    rep.theorem_tag  = "C1";
    rep.confidence   = tau;
    rep.bound_value  = vf * t1.bound_value;
    rep.constituents = {{"h", t1.constituents.at("h")}, {"vol_factor", vf}, {"sigma", sigma}};
    rep.vacuous      = rep.bound_value > 2.0 * vf; // L^r norm <= 2 vol^{2/r}(S) <= 2 vol_factor
    return rep;
}

double khintchine(double r) {
    if (!(r > 1.0)) throw InvalidParameterError("khintchine: r must be > 1");
    if (r <= 2.0) return 1.0;
    return std::numbers::sqrt2 *
           std::exp((std::lgamma(0.5 * (r + 1.0)) - 0.5 * std::log(std::numbers::pi)) / r);
}

BoundReport thm2_bound(int d, double diam, std::int64_t m, double tau, double r) {
    require_m(m);
    const double cr = khintchine(r);
    const double vf = vol_factor(d, diam, r);
    const double md = static_cast<double>(m);
    const double rate = 1.0 - std::max(0.5, 1.0 / r);
    BoundReport rep;
    rep.theorem_tag  = "T2";
    rep.confidence   = tau;
    rep.bound_value  = vf * (cr * std::pow(md, -rate) + sqrt2tau(tau) / std::sqrt(md));
    rep.constituents = {{"C_prime_r", cr}, {"vol_factor", vf}, {"rate_exponent", rate}};
    rep.vacuous      = rep.bound_value > 2.0 * vf;
    return rep;
}

BoundReport thm3_H(int d, const MultiIndex& p, const MultiIndex& q, double diam,
                   const SpectralMeasure& measure) {
    if (!(diam > 0.0)) throw InvalidParameterError("thm3_H: diam must be > 0");
    const double T2   = sup_moment_T(measure, p.doubled(), q.doubled());
    const double C2   = moment_C(measure, p.doubled(), q.doubled()).cross_C;
    const double U    = std::log(2.0 * diam / std::sqrt(T2) + 1.0);
    const double dd   = static_cast<double>(d);
    const double H    = 32.0 * std::sqrt(2.0 * dd * T2) *
                     (std::sqrt(U) + 0.5 / std::sqrt(U) + std::sqrt(std::log(std::sqrt(C2) + 1.0)));
    BoundReport rep;
    rep.theorem_tag  = "T3";
    rep.bound_value  = H;
    rep.constituents = {{"H", H}, {"U", U}, {"T_2p2q", T2}, {"C_2p2q", C2}};
    return rep;
}

BoundReport thm3_bound(int d, const MultiIndex& p, const MultiIndex& q, double diam,
                       const SpectralMeasure& measure, std::int64_t m, double tau) {
    require_m(m);
    BoundReport rep = thm3_H(d, p, q, diam, measure);
    const double T  = sup_moment_T(measure, p, q);
    const double H  = rep.bound_value;
    rep.theorem_tag = "T3";
    rep.confidence  = tau;
    rep.bound_value = (H + T * sqrt2tau(tau)) / std::sqrt(static_cast<double>(m));
    rep.constituents["T_pq"] = T;
    rep.vacuous = rep.bound_value > 2.0 * T; // sup error <= 2 T_{p,q} for bounded support
    return rep;
}

BernsteinParams bernstein_params(const SpectralMeasure& measure, const MultiIndex& p,
                                 const MultiIndex& q) {
    if (!measure.bounded_support() && !p.plus(q).is_zero())
        throw UnboundedSupportError("bernstein_params: requires bounded spectral support");
    const double T  = sup_moment_T(measure, p, q);
    const double T2 = sup_moment_T(measure, p.doubled(), q.doubled());
    return {T2, 4.0 * T};
}

double net_constant_F(int d) {
    const double dd = static_cast<double>(d);
    const double e  = dd / (dd + 1.0);
    return std::pow(dd, -e) + std::pow(dd, 1.0 / (dd + 1.0));
}

double thm4_failure_prob(int d, double eps, std::int64_t m, double diam, double sigma2_b,
                         double L_b, double D, double E) {
    require_m(m);
    if (!(eps > 0.0)) throw InvalidParameterError("thm4: eps must be > 0");
    if (!(sigma2_b > 0.0) || !(L_b > 0.0))
        throw InvalidParameterError("thm4: Bernstein parameters must be > 0");
    if (D < 0.0 || E < 0.0) throw InvalidParameterError("thm4: D, E must be >= 0");
    const double dd  = static_cast<double>(d);
    const double md  = static_cast<double>(m);
    const double den = 8.0 * sigma2_b * (1.0 + eps * L_b / (2.0 * sigma2_b));
    const double exponent = md * eps * eps / den;
    const double term1    = std::pow(2.0, dd - 1.0) * std::exp(-exponent);
    const double term2    = net_constant_F(d) * std::pow(2.0, (4.0 * dd - 1.0) / (dd + 1.0)) *
                         std::pow(diam * (D + E) / eps, dd / (dd + 1.0)) *
                         std::exp(-exponent / (dd + 1.0));
    return term1 + term2;
}

BoundReport thm4_report(int d, const MultiIndex& p, const MultiIndex& q, double eps,
                        std::int64_t m, const SpectralMeasure& measure, const CompactSet& s,
                        double sigma2_b, double L_b, double D, double E) {
    (void)p;
    (void)q;
    (void)measure;
    const double diam = s.diameter();
    BoundReport rep;
    rep.theorem_tag  = "T4";
    rep.confidence   = eps;
    rep.bound_value  = thm4_failure_prob(d, eps, m, diam, sigma2_b, L_b, D, E);
    rep.constituents = {{"sigma_bernstein", sigma2_b}, {"L_bernstein", L_b},
                        {"D", D},                      {"E", E},
                        {"F_d", net_constant_F(d)},    {"diam", diam}};
    rep.vacuous      = rep.bound_value > 1.0;
    return rep;
}

double covering_upper(double R, double eps, int d) {
    if (!(eps > 0.0)) throw InvalidParameterError("covering_upper: eps must be > 0");
    if (R < 0.0) throw InvalidParameterError("covering_upper: R must be >= 0");
    return std::pow(4.0 * R / eps + 1.0, static_cast<double>(d));
}

double entropy_integral_upper(double a) {
    if (!(a > 1.0)) throw InvalidParameterError("entropy_integral_upper: a must be > 1");
    const double la = std::log(a);
    return std::sqrt(la) + 0.5 / std::sqrt(la);
}

} // namespace rff
