#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rff/bounds.hpp"
#include "rff/compact_set.hpp"
#include "rff/norms.hpp"
#include "rff/spectral.hpp"

namespace rff {

enum class GrowthRule { Constant, Power, Exponential };

// Seeded Monte Carlo experiment description. Parsed from a flat `key = value`
// config file (UTF-8, `#` comments); see config_keys in harness.cpp and the
// README for the key list.
struct ExperimentConfig {
    SpectralMeasure measure = SpectralMeasure::gaussian_iso(1, 1.0);
    CompactSet domain       = CompactSet::box({0.0}, {1.0});
    MultiIndex p            = MultiIndex::zeros(1);
    MultiIndex q            = MultiIndex::zeros(1);

    std::vector<std::int64_t> m_grid;
    int trials = 1;
    std::vector<double> tau_grid; // coverage levels for T1/T3
    std::vector<double> eps_grid; // coverage levels for T4
    std::uint64_t base_seed = 0;

    NormKind norm_kind = NormKind::Sup;
    double lr_r        = 2.0;

    GrowthRule growth   = GrowthRule::Constant;
    double growth_alpha = 0.0; // diam(m) = m^alpha
    double growth_beta  = 0.0; // diam(m) = exp(beta sqrt(m))

    double target_slack   = 1e-3;
    std::int64_t grid_cap = default_grid_cap;
    std::int64_t lr_points = 0; // 0 = per-dimension default
    QuadratureSpec::Method lr_method = QuadratureSpec::Method::TensorGrid;
    std::int64_t lr_mc_n   = 200000;

    std::string coverage_bound = "t1"; // t1 | t3 | t4
    double bound_tau           = 1.0;  // τ used for the per-trial bound columns
    bool timing                = false; // real wall_ms in the CSV (breaks byte-identity)

    double check_slope_min = -0.58; // acceptance band for `experiment rate --check`
    double check_slope_max = -0.42;

    std::string out_csv;     // optional overrides of the default file names
    std::string out_summary;

    static ExperimentConfig from_file(const std::filesystem::path& path);
    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
};

// One CSV row. seed is derived from (base_seed, m index, trial index) by the
// fixed finalizer in rng.hpp, so records are independent of execution order.
struct TrialRecord {
    std::int64_t m   = 0;
    int trial        = 0;
    std::uint64_t seed = 0;
    double error     = 0.0;
    double slack     = 0.0;
    double bound_t1  = 0.0;
    double bound_c1  = 0.0;
    double bound_t2  = 0.0;
    double bound_t3  = 0.0;
    double diam      = 0.0;
    double wall_ms   = 0.0;
};

struct SlopeFit {
    double slope     = 0.0;
    double intercept = 0.0;
    double residual  = 0.0; // RMS residual in log-log space
};

// Ordinary least squares on (log m, log median_error). Requires >= 3 pairs
// and strictly positive errors (DegenerateInputError otherwise, e.g. the
// exact Discrete case).
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& pairs);

struct RateSummary {
    std::vector<std::pair<std::int64_t, double>> medians; // (m, median error)
    bool slope_defined = false;
    SlopeFit fit;
    std::string slope_note; // set when undefined (all-zero errors)
};

struct CoverageRow {
    std::int64_t m = 0;
    double level   = 0.0; // τ (T1/T3) or ε (T4)
    double bound   = 0.0; // error threshold compared against
    std::int64_t exceed_count = 0;
    double exceedance  = 0.0;
    double theoretical = 0.0; // e^{−τ} or the T4 failure probability
    double binom_se    = 0.0;
    bool validated     = false;
};

struct GrowthSummary {
    RateSummary rate;
    std::vector<std::pair<std::int64_t, double>> diam_used;
    double first_third_median = 0.0;
    double last_third_median  = 0.0;
    bool decreasing           = false;
    std::string regime; // L^r growth-rule classification vs the r/(4d) boundary
};

// Runs every (m, trial) task of the config on `threads` workers. Output is a
// deterministic function of the config alone; thread count only affects speed.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, int threads);

RateSummary summarize_rate(const std::vector<TrialRecord>& records);

std::vector<TrialRecord> run_rate_experiment(const ExperimentConfig& cfg, int threads,
                                             RateSummary* summary);

// Exceedance frequency of {error + slack >= bound} per (m, level), compared
// with the stated failure probability; validated when the empirical frequency
// is within three binomial standard errors of it.
std::vector<CoverageRow> run_coverage_experiment(const ExperimentConfig& cfg, int threads,
                                                 std::vector<TrialRecord>* records = nullptr);

std::vector<TrialRecord> run_growing_diameter(const ExperimentConfig& cfg, int threads,
                                              GrowthSummary* summary);

// Fixed schema `m,trial,seed,error,slack,bound_t1,bound_c1,bound_t2,bound_t3,diam,wall_ms`;
// floats printed with 17 significant digits. wall_ms is 0 unless cfg.timing.
void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool timing);
std::string records_csv(const std::vector<TrialRecord>& records, bool timing);

std::string records_json(const std::vector<TrialRecord>& records, bool timing);
std::string rate_summary_json(const ExperimentConfig& cfg, const RateSummary& summary);
std::string coverage_json(const ExperimentConfig& cfg, const std::vector<CoverageRow>& rows);
std::string growth_summary_json(const ExperimentConfig& cfg, const GrowthSummary& summary);

} // namespace rff
