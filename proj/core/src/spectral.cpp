#include "rff/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rff/feature_set.hpp"
#include "rff/rng.hpp"

namespace rff {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2_sq(std::span<const double> a) { return dot(a, a); }

// sin(u)/u with the u=0 limit; series below 1e-4 keeps full precision.
double sinc(double u) {
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sin(u) / u;
}

// E|X|^k for X ~ U[−R, R]: R^k / (k+1).
double abs_moment_uniform(int k, double R) {
    return std::pow(R, k) / static_cast<double>(k + 1);
}

// E|X|^k for X ~ N(0, s²): s^k 2^{k/2} Γ((k+1)/2) / √π.
double abs_moment_gaussian(int k, double s) {
    if (k == 0) return 1.0;
    return std::pow(s, k) *
           std::exp(0.5 * k * std::numbers::ln2 + std::lgamma(0.5 * (k + 1)) -
                    0.5 * std::log(std::numbers::pi));
}

double coordinate_abs_moment(const SpectralMeasure& mu, int k) {
    if (mu.kind() == SpectralMeasure::Kind::UniformBox)
        return abs_moment_uniform(k, mu.half_width());
    return abs_moment_gaussian(k, 1.0 / mu.gamma());
}

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

SpectralMeasure SpectralMeasure::gaussian_iso(int d, double gamma) {
    if (d < 1) throw InvalidParameterError("gaussian_iso: d must be >= 1");
    if (!(gamma > 0.0)) throw InvalidParameterError("gaussian_iso: gamma must be > 0");
    SpectralMeasure m;
    m.kind_  = Kind::GaussianIso;
    m.d_     = d;
    m.gamma_ = gamma;
    return m;
}

SpectralMeasure SpectralMeasure::uniform_box(int d, double half_width) {
    if (d < 1) throw InvalidParameterError("uniform_box: d must be >= 1");
    if (!(half_width > 0.0)) throw InvalidParameterError("uniform_box: R must be > 0");
    SpectralMeasure m;
    m.kind_       = Kind::UniformBox;
    m.d_          = d;
    m.half_width_ = half_width;
    return m;
}

SpectralMeasure SpectralMeasure::discrete(std::vector<std::vector<double>> atoms,
                                          std::vector<double> weights) {
    if (atoms.empty()) throw InvalidParameterError("discrete: needs at least one atom");
    if (atoms.size() != weights.size())
        throw InvalidParameterError("discrete: atoms/weights length mismatch");
    const std::size_t d = atoms.front().size();
    if (d == 0) throw InvalidParameterError("discrete: atoms must be nonempty points");
    double wsum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].size() != d) throw DimensionMismatchError("discrete: ragged atom list");
        if (weights[i] < 0.0) throw InvalidParameterError("discrete: negative weight");
        wsum += weights[i];
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw InvalidParameterError("discrete: weights must sum to 1 (got " + format_num(wsum) + ")");
    SpectralMeasure m;
    m.kind_    = Kind::Discrete;
    m.d_       = static_cast<int>(d);
    m.atoms_   = std::move(atoms);
    m.weights_ = std::move(weights);
    return m;
}

double SpectralMeasure::characteristic(std::span<const double> z) const {
    if (static_cast<int>(z.size()) != d_)
        throw DimensionMismatchError("characteristic: point dimension mismatch");
    switch (kind_) {
        case Kind::GaussianIso:
            return std::exp(-norm2_sq(z) / (2.0 * gamma_ * gamma_));
        case Kind::UniformBox: {
            double prod = 1.0;
            for (double zi : z) prod *= sinc(half_width_ * zi);
            return prod;
        }
        case Kind::Discrete: {
            double s = 0.0;
            for (std::size_t i = 0; i < atoms_.size(); ++i)
                s += weights_[i] * std::cos(dot(atoms_[i], z));
            return s;
        }
    }
    return 0.0;
}

std::string SpectralMeasure::id() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::GaussianIso:
            os << "gaussian_iso(d=" << d_ << ",gamma=" << gamma_ << ")";
            break;
        case Kind::UniformBox:
            os << "uniform_box(d=" << d_ << ",R=" << half_width_ << ")";
            break;
        case Kind::Discrete:
            os << "discrete(d=" << d_ << ",atoms=" << atoms_.size() << ")";
            break;
    }
    return os.str();
}

FeatureSet sample_frequencies(const SpectralMeasure& measure, std::int64_t m, std::uint64_t seed) {
    if (m < 1) throw InvalidParameterError("sample_frequencies: m must be >= 1");
    const int d = measure.dim();
    std::vector<double> rows(static_cast<std::size_t>(m) * static_cast<std::size_t>(d));
    Rng rng(seed);
    switch (measure.kind()) {
        case SpectralMeasure::Kind::GaussianIso: {
            const double s = 1.0 / measure.gamma();
            for (double& v : rows) v = s * rng.normal();
            break;
        }
        case SpectralMeasure::Kind::UniformBox: {
            const double R = measure.half_width();
            for (double& v : rows) v = rng.uniform(-R, R);
            break;
        }
        case SpectralMeasure::Kind::Discrete: {
            const auto& atoms   = measure.atoms();
            const auto& weights = measure.weights();
            for (std::int64_t j = 0; j < m; ++j) {
                const double u = rng.unit();
                double acc     = 0.0;
                std::size_t pick = atoms.size() - 1;
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    acc += weights[i];
                    if (u < acc) {
                        pick = i;
                        break;
                    }
                }
                for (int i = 0; i < d; ++i)
                    rows[static_cast<std::size_t>(j) * d + static_cast<std::size_t>(i)] =
                        atoms[pick][static_cast<std::size_t>(i)];
            }
            break;
        }
    }
    return FeatureSet(std::move(rows), m, d, measure.id(), seed);
}

double second_moment(const SpectralMeasure& measure) {
    const double d = static_cast<double>(measure.dim());
    switch (measure.kind()) {
        case SpectralMeasure::Kind::GaussianIso:
            return d / (measure.gamma() * measure.gamma());
        case SpectralMeasure::Kind::UniformBox:
            return d * measure.half_width() * measure.half_width() / 3.0;
        case SpectralMeasure::Kind::Discrete: {
            double s = 0.0;
            for (std::size_t i = 0; i < measure.atoms().size(); ++i)
                s += measure.weights()[i] * norm2_sq(measure.atoms()[i]);
            return s;
        }
    }
    return 0.0;
}

double sup_moment_T(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q) {
    const MultiIndex n = p.plus(q);
    if (n.dim() != measure.dim()) throw DimensionMismatchError("sup_moment_T: dimension mismatch");
    if (n.is_zero()) return 1.0; // |ω^0| = 1 for every ω
    switch (measure.kind()) {
        case SpectralMeasure::Kind::GaussianIso:
            throw UnboundedSupportError(
                "sup_moment_T: unbounded spectral support with nonzero derivative order");
        case SpectralMeasure::Kind::UniformBox:
            return std::pow(measure.half_width(), n.order());
        case SpectralMeasure::Kind::Discrete: {
            double best = 0.0;
            for (const auto& a : measure.atoms()) best = std::max(best, abs_pow_multi(a, n));
            return best;
        }
    }
    return 0.0;
}

namespace {

// E[|ω^n| g(ω)] via Monte Carlo; g_pow = 1 for ‖ω‖, 2 for ‖ω‖².
double mc_cross_moment(const SpectralMeasure& measure, const MultiIndex& n, int g_pow,
                       std::uint64_t mc_samples, std::uint64_t seed) {
    if (mc_samples < 1)
        throw InvalidParameterError(
            "cross moment: no closed form for this variant/dimension; pass mc_samples >= 1");
    const FeatureSet draws = sample_frequencies(measure, static_cast<std::int64_t>(mc_samples), seed);
    double acc = 0.0;
    for (std::int64_t j = 0; j < draws.size(); ++j) {
        const auto w   = draws.row(j);
        const double g = (g_pow == 2) ? norm2_sq(w) : std::sqrt(norm2_sq(w));
        acc += abs_pow_multi(w, n) * g;
    }
    return acc / static_cast<double>(mc_samples);
}

// Σⱼ E|ω_j|^{n_j+2} Π_{i≠j} E|ω_i|^{n_i} for iid product coordinates.
double product_cross_C(const SpectralMeasure& measure, const MultiIndex& n) {
    const int d = measure.dim();
    double total = 0.0;
    for (int j = 0; j < d; ++j) {
        double term = coordinate_abs_moment(measure, n[j] + 2);
        for (int i = 0; i < d; ++i)
            if (i != j) term *= coordinate_abs_moment(measure, n[i]);
        total += term;
    }
    return total;
}

} // namespace

MomentReport moment_C(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      std::uint64_t mc_samples, std::uint64_t seed) {
    const MultiIndex n = p.plus(q);
    if (n.dim() != measure.dim()) throw DimensionMismatchError("moment_C: dimension mismatch");
    MomentReport rep;
    rep.sigma2 = second_moment(measure);
    if (measure.kind() == SpectralMeasure::Kind::Discrete) {
        double s = 0.0;
        for (std::size_t i = 0; i < measure.atoms().size(); ++i)
            s += measure.weights()[i] * abs_pow_multi(measure.atoms()[i], n) *
                 norm2_sq(measure.atoms()[i]);
        rep.cross_C = s;
        return rep;
    }
    rep.cross_C = product_cross_C(measure, n);
    (void)mc_samples;
    (void)seed;
    return rep;
}

MomentReport moment_E(const SpectralMeasure& measure, const MultiIndex& p, const MultiIndex& q,
                      std::uint64_t mc_samples, std::uint64_t seed) {
    const MultiIndex n = p.plus(q);
    if (n.dim() != measure.dim()) throw DimensionMismatchError("moment_E: dimension mismatch");
    MomentReport rep;
    rep.sigma2 = second_moment(measure);
    if (measure.kind() == SpectralMeasure::Kind::Discrete) {
        double s = 0.0;
        for (std::size_t i = 0; i < measure.atoms().size(); ++i)
            s += measure.weights()[i] * abs_pow_multi(measure.atoms()[i], n) *
                 std::sqrt(norm2_sq(measure.atoms()[i]));
        rep.cross_E = s;
        return rep;
    }
    if (measure.dim() == 1) {
        // |ω^n| ‖ω‖ = |ω|^{n+1} in one dimension.
        rep.cross_E = coordinate_abs_moment(measure, n.order() + 1);
        return rep;
    }
    // ‖ω‖₂ = √(Σ ωᵢ²) does not factor across coordinates.
    rep.cross_E    = mc_cross_moment(measure, n, 1, mc_samples, seed);
    rep.exact      = false;
    rep.mc_samples = mc_samples;
    return rep;
}

MomentReport moments_report(const SpectralMeasure& measure, const MultiIndex& p,
                            const MultiIndex& q, std::uint64_t mc_samples, std::uint64_t seed) {
    MomentReport rep = moment_C(measure, p, q, mc_samples, seed);
    const MomentReport e = moment_E(measure, p, q, mc_samples, seed);
    rep.cross_E    = e.cross_E;
    rep.exact      = rep.exact && e.exact;
    rep.mc_samples = std::max(rep.mc_samples, e.mc_samples);
    const MultiIndex n = p.plus(q);
    if (measure.bounded_support() || n.is_zero()) rep.sup_T = sup_moment_T(measure, p, q);
    return rep;
}

} // namespace rff
