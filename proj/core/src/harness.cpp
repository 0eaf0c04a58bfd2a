#include "rff/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rff/rng.hpp"

namespace rff {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& f : split(s, ','))
        if (!f.empty()) out.push_back(std::stod(f));
    return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const auto& f : split(s, ','))
        if (!f.empty()) out.push_back(std::stoll(f));
    return out;
}

std::vector<int> parse_small_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& f : split(s, ','))
        if (!f.empty()) out.push_back(std::stoi(f));
    return out;
}

class KeyMap {
public:
    explicit KeyMap(const std::map<std::string, std::string>& kv) : kv_(kv) {}

    bool has(const std::string& k) const { return kv_.count(k) > 0; }

    std::string str(const std::string& k) const {
        auto it = kv_.find(k);
        if (it == kv_.end()) throw InvalidParameterError("config: missing key '" + k + "'");
        used_.insert(k);
        return it->second;
    }
    std::string str_or(const std::string& k, const std::string& def) const {
        return has(k) ? str(k) : def;
    }
    double num(const std::string& k) const { return std::stod(str(k)); }
    double num_or(const std::string& k, double def) const { return has(k) ? num(k) : def; }
    std::int64_t integer(const std::string& k) const { return std::stoll(str(k)); }
    std::int64_t integer_or(const std::string& k, std::int64_t def) const {
        return has(k) ? integer(k) : def;
    }
    bool flag_or(const std::string& k, bool def) const {
        if (!has(k)) return def;
        const std::string v = str(k);
        return v == "true" || v == "1" || v == "yes";
    }

    void check_all_used() const {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k))
                throw InvalidParameterError("config: unknown key '" + k + "'");
    }

private:
    const std::map<std::string, std::string>& kv_;
    mutable std::set<std::string> used_;
};

SpectralMeasure measure_from(const KeyMap& kv) {
    const std::string kind = kv.str("measure.kind");
    if (kind == "gaussian_iso")
        return SpectralMeasure::gaussian_iso(static_cast<int>(kv.integer("measure.d")),
                                             kv.num("measure.gamma"));
    if (kind == "uniform_box")
        return SpectralMeasure::uniform_box(static_cast<int>(kv.integer("measure.d")),
                                            kv.num("measure.R"));
    if (kind == "discrete") {
        std::vector<std::vector<double>> atoms;
        for (const auto& part : split(kv.str("measure.atoms"), ';'))
            if (!part.empty()) atoms.push_back(parse_doubles(part));
        std::vector<double> weights;
        if (kv.has("measure.weights"))
            weights = parse_doubles(kv.str("measure.weights"));
        else
            weights.assign(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
        auto mu = SpectralMeasure::discrete(std::move(atoms), std::move(weights));
        if (kv.has("measure.d") && kv.integer("measure.d") != mu.dim())
            throw InvalidParameterError("config: measure.d does not match the atom dimension");
        return mu;
    }
    throw InvalidParameterError("config: measure.kind must be gaussian_iso|uniform_box|discrete");
}

CompactSet set_from(const KeyMap& kv) {
    const std::string kind = kv.str_or("set.kind", "box");
    if (kind == "box") return CompactSet::box(parse_doubles(kv.str("set.lower")),
                                              parse_doubles(kv.str("set.upper")));
    if (kind == "ball")
        return CompactSet::ball(parse_doubles(kv.str("set.center")), kv.num("set.radius"));
    throw InvalidParameterError("config: set.kind must be box|ball");
}

// --- per-trial evaluation -------------------------------------------------

struct TrialContext {
    const ExperimentConfig* cfg;
    std::vector<std::int64_t> m_grid;
    std::vector<CompactSet> domain_per_m; // grown per the diameter rule
};

double diam_for_m(const ExperimentConfig& cfg, std::int64_t m) {
    switch (cfg.growth) {
        case GrowthRule::Constant: return cfg.domain.diameter();
        case GrowthRule::Power: return std::pow(static_cast<double>(m), cfg.growth_alpha);
        case GrowthRule::Exponential:
            return std::exp(cfg.growth_beta * std::sqrt(static_cast<double>(m)));
    }
    return cfg.domain.diameter();
}

TrialRecord run_one_trial(const TrialContext& ctx, std::size_t m_index, int trial) {
    const ExperimentConfig& cfg = *ctx.cfg;
    const std::int64_t m        = ctx.m_grid[m_index];
    const CompactSet& domain    = ctx.domain_per_m[m_index];
    const double diam           = domain.diameter();
    const int d                 = cfg.measure.dim();

    TrialRecord rec;
    rec.m     = m;
    rec.trial = trial;
    rec.diam  = diam;
    rec.seed  = derive_seed(cfg.base_seed,
                            static_cast<std::uint64_t>(m_index) *
                                    static_cast<std::uint64_t>(cfg.trials) +
                                static_cast<std::uint64_t>(trial));

    const auto t0 = std::chrono::steady_clock::now();

    const FeatureSet features = sample_frequencies(cfg.measure, m, rec.seed);
    if (cfg.norm_kind == NormKind::Sup) {
        const ErrorReport er = sup_error_certified(features, cfg.p, cfg.q, cfg.measure, domain,
                                                   cfg.target_slack, cfg.grid_cap);
        rec.error = er.value;
        rec.slack = er.certificate_slack;
    } else {
        QuadratureSpec quad;
        quad.method = cfg.lr_method;
        quad.n      = (cfg.lr_method == QuadratureSpec::Method::TensorGrid) ? cfg.lr_points
                                                                            : cfg.lr_mc_n;
        quad.seed   = mix64(rec.seed ^ golden_gamma);
        const ErrorReport er = lr_error(features, cfg.p, cfg.q, cfg.measure, domain, cfg.lr_r, quad);
        rec.error = er.value;
        rec.slack = er.certificate_slack;
    }

    const double sigma = std::sqrt(second_moment(cfg.measure));
    const double tau   = cfg.bound_tau;
    rec.bound_t1       = thm1_bound(d, diam, sigma, m, tau).bound_value;
    rec.bound_c1       = vol_factor(d, diam, cfg.lr_r) * rec.bound_t1;
    rec.bound_t2       = thm2_bound(d, diam, m, tau, cfg.lr_r).bound_value;
    try {
        rec.bound_t3 = thm3_bound(d, cfg.p, cfg.q, diam, cfg.measure, m, tau).bound_value;
    } catch (const UnboundedSupportError&) {
        rec.bound_t3 = std::numeric_limits<double>::quiet_NaN();
    }

    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms   = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InvalidParameterError("config: cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameterError("config: expected 'key = value', got '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return from_map(kv);
}

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& raw) {
    KeyMap kv(raw);
    ExperimentConfig cfg;
    cfg.measure = measure_from(kv);
    cfg.domain  = set_from(kv);
    if (cfg.domain.dim() != cfg.measure.dim())
        throw InvalidParameterError("config: set dimension must match measure dimension");

    const int d = cfg.measure.dim();
    cfg.p = kv.has("p") ? MultiIndex(parse_small_ints(kv.str("p"))) : MultiIndex::zeros(d);
    cfg.q = kv.has("q") ? MultiIndex(parse_small_ints(kv.str("q"))) : MultiIndex::zeros(d);
    if (cfg.p.dim() != d || cfg.q.dim() != d)
        throw InvalidParameterError("config: p/q length must equal the dimension");

    cfg.m_grid = parse_ints(kv.str("m_grid"));
    if (cfg.m_grid.empty()) throw InvalidParameterError("config: m_grid must be nonempty");
    for (std::size_t i = 1; i < cfg.m_grid.size(); ++i)
        if (cfg.m_grid[i] <= cfg.m_grid[i - 1])
            throw InvalidParameterError("config: m_grid must be strictly increasing");

    cfg.trials = static_cast<int>(kv.integer_or("trials", 1));
    if (cfg.trials < 1) throw InvalidParameterError("config: trials must be >= 1");

    if (kv.has("tau_grid")) cfg.tau_grid = parse_doubles(kv.str("tau_grid"));
    if (kv.has("eps_grid")) cfg.eps_grid = parse_doubles(kv.str("eps_grid"));
    cfg.base_seed = static_cast<std::uint64_t>(kv.integer_or("base_seed", 0));

    const std::string norm = kv.str_or("norm", "sup");
    if (norm == "sup")
        cfg.norm_kind = NormKind::Sup;
    else if (norm == "lr")
        cfg.norm_kind = NormKind::Lr;
    else
        throw InvalidParameterError("config: norm must be sup|lr");
    cfg.lr_r = kv.num_or("lr_r", 2.0);

    const std::string rule = kv.str_or("growth.rule", "constant");
    if (rule == "constant")
        cfg.growth = GrowthRule::Constant;
    else if (rule == "power")
        cfg.growth = GrowthRule::Power;
    else if (rule == "exponential")
        cfg.growth = GrowthRule::Exponential;
    else
        throw InvalidParameterError("config: growth.rule must be constant|power|exponential");
    cfg.growth_alpha = kv.num_or("growth.alpha", 0.0);
    cfg.growth_beta  = kv.num_or("growth.beta", 0.0);
    if (cfg.growth == GrowthRule::Power && !(cfg.growth_alpha > 0.0))
        throw InvalidParameterError("config: growth.alpha must be > 0 for the power rule");
    if (cfg.growth == GrowthRule::Exponential && !(cfg.growth_beta > 0.0))
        throw InvalidParameterError("config: growth.beta must be > 0 for the exponential rule");

    cfg.target_slack = kv.num_or("target_slack", 1e-3);
    cfg.grid_cap     = kv.integer_or("grid_cap", default_grid_cap);
    cfg.lr_points    = kv.integer_or("lr_points", 0);
    const std::string quad = kv.str_or("lr_quadrature", "tensor");
    if (quad == "tensor")
        cfg.lr_method = QuadratureSpec::Method::TensorGrid;
    else if (quad == "mc")
        cfg.lr_method = QuadratureSpec::Method::MonteCarlo;
    else
        throw InvalidParameterError("config: lr_quadrature must be tensor|mc");
    cfg.lr_mc_n = kv.integer_or("lr_mc_n", 200000);

    cfg.coverage_bound = kv.str_or("coverage.bound", "t1");
    if (cfg.coverage_bound != "t1" && cfg.coverage_bound != "t3" && cfg.coverage_bound != "t4")
        throw InvalidParameterError("config: coverage.bound must be t1|t3|t4");
    cfg.bound_tau = kv.num_or("bound_tau", cfg.tau_grid.empty() ? 1.0 : cfg.tau_grid.front());
    cfg.timing    = kv.flag_or("timing", false);

    cfg.check_slope_min = kv.num_or("check.slope_min", -0.58);
    cfg.check_slope_max = kv.num_or("check.slope_max", -0.42);

    cfg.out_csv     = kv.str_or("out.csv", "");
    cfg.out_summary = kv.str_or("out.summary", "");

    kv.check_all_used();
    return cfg;
}

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3)
        throw DegenerateInputError("fit_loglog_slope: need at least 3 points");
    double sx = 0, sy = 0;
    for (const auto& [m, e] : pairs) {
        if (!(m > 0.0) || !(e > 0.0))
            throw DegenerateInputError("fit_loglog_slope: inputs must be positive");
        sx += std::log(m);
        sy += std::log(e);
    }
    const double n  = static_cast<double>(pairs.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [m, e] : pairs) {
        const double dx = std::log(m) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(e) - my);
    }
    SlopeFit fit;
    fit.slope     = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto& [m, e] : pairs) {
        const double r = std::log(e) - (fit.intercept + fit.slope * std::log(m));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, int threads) {
    TrialContext ctx;
    ctx.cfg    = &cfg;
    ctx.m_grid = cfg.m_grid;
    for (std::int64_t m : cfg.m_grid)
        ctx.domain_per_m.push_back(cfg.growth == GrowthRule::Constant
                                       ? cfg.domain
                                       : cfg.domain.scaled_to_diameter(diam_for_m(cfg, m)));

    const std::size_t n_tasks = cfg.m_grid.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRecord> out(n_tasks);

    // Each task writes only its own slot, so results are identical for any
    // worker count; a failed trial carries its seed in the exception message.
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_tasks || failed.load()) break;
            const std::size_t m_index = i / static_cast<std::size_t>(cfg.trials);
            const int trial           = static_cast<int>(i % static_cast<std::size_t>(cfg.trials));
            try {
                out[i] = run_one_trial(ctx, m_index, trial);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true))
                    failure_message = "trial (m=" + std::to_string(cfg.m_grid[m_index]) +
                                      ", trial=" + std::to_string(trial) + ", seed=" +
                                      std::to_string(derive_seed(
                                          cfg.base_seed,
                                          static_cast<std::uint64_t>(m_index) *
                                                  static_cast<std::uint64_t>(cfg.trials) +
                                              static_cast<std::uint64_t>(trial))) +
                                      ") failed: " + ex.what();
            }
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(failure_message);
    return out;
}

RateSummary summarize_rate(const std::vector<TrialRecord>& records) {
    RateSummary sum;
    std::map<std::int64_t, std::vector<double>> by_m;
    for (const auto& r : records) by_m[r.m].push_back(r.error);
    for (auto& [m, v] : by_m) sum.medians.emplace_back(m, median_of(std::move(v)));

    std::vector<std::pair<double, double>> pairs;
    bool at_floor = false;
    for (const auto& [m, med] : sum.medians) {
        pairs.emplace_back(static_cast<double>(m), med);
        if (med <= 1e-14) at_floor = true; // exact estimator, error is pure roundoff
    }
    if (at_floor) {
        sum.slope_defined = false;
        sum.slope_note    = "median error at the roundoff floor; slope undefined";
        return sum;
    }
    try {
        sum.fit           = fit_loglog_slope(pairs);
        sum.slope_defined = true;
    } catch (const DegenerateInputError& ex) {
        sum.slope_defined = false;
        sum.slope_note    = ex.what();
    }
    return sum;
}

std::vector<TrialRecord> run_rate_experiment(const ExperimentConfig& cfg, int threads,
                                             RateSummary* summary) {
    std::vector<TrialRecord> records = run_trials(cfg, threads);
    if (summary) *summary = summarize_rate(records);
    return records;
}

std::vector<CoverageRow> run_coverage_experiment(const ExperimentConfig& cfg, int threads,
                                                 std::vector<TrialRecord>* records_out) {
    const bool is_t4 = cfg.coverage_bound == "t4";
    const std::vector<double>& levels = is_t4 ? cfg.eps_grid : cfg.tau_grid;
    if (levels.empty())
        throw InvalidParameterError("coverage: tau_grid (t1/t3) or eps_grid (t4) required");

    std::vector<TrialRecord> records = run_trials(cfg, threads);
    const double trials = static_cast<double>(cfg.trials);

    std::vector<CoverageRow> rows;
    for (std::size_t mi = 0; mi < cfg.m_grid.size(); ++mi) {
        const std::int64_t m = cfg.m_grid[mi];
        const CompactSet dom = cfg.growth == GrowthRule::Constant
                                   ? cfg.domain
                                   : cfg.domain.scaled_to_diameter(diam_for_m(cfg, m));
        const double diam = dom.diameter();
        const int d       = cfg.measure.dim();

        std::vector<double> upper; // certified upper bound per trial
        for (const auto& r : records)
            if (r.m == m) upper.push_back(r.error + r.slack);

        for (double level : levels) {
            CoverageRow row;
            row.m     = m;
            row.level = level;
            if (is_t4) {
                const BernsteinParams bp = bernstein_params(cfg.measure, cfg.p, cfg.q);
                const double D = gradient_sup_D(cfg.measure, cfg.p, cfg.q, dom);
                const double E = moment_E(cfg.measure, cfg.p, cfg.q, 200000,
                                          mix64(cfg.base_seed ^ 0x5bd1e995u))
                                     .cross_E;
                row.bound       = level; // ε is the error threshold itself
                row.theoretical = thm4_failure_prob(d, level, m, diam, bp.sigma2, bp.L, D, E);
            } else if (cfg.coverage_bound == "t3") {
                row.bound = thm3_bound(d, cfg.p, cfg.q, diam, cfg.measure, m, level).bound_value;
                row.theoretical = std::exp(-level);
            } else {
                const double sigma = std::sqrt(second_moment(cfg.measure));
                row.bound          = thm1_bound(d, diam, sigma, m, level).bound_value;
                row.theoretical    = std::exp(-level);
            }
            for (double u : upper)
                if (u >= row.bound) ++row.exceed_count;
            row.exceedance = static_cast<double>(row.exceed_count) / trials;
            const double pt = std::min(1.0, row.theoretical);
            row.binom_se   = std::sqrt(pt * (1.0 - pt) / trials);
            row.validated  = row.exceedance <= row.theoretical + 3.0 * row.binom_se;
            rows.push_back(row);
        }
    }
    if (records_out) *records_out = std::move(records);
    return rows;
}

std::vector<TrialRecord> run_growing_diameter(const ExperimentConfig& cfg, int threads,
                                              GrowthSummary* summary) {
    std::vector<TrialRecord> records = run_trials(cfg, threads);
    if (summary) {
        summary->rate = summarize_rate(records);
        for (std::size_t mi = 0; mi < cfg.m_grid.size(); ++mi)
            summary->diam_used.emplace_back(cfg.m_grid[mi], diam_for_m(cfg, cfg.m_grid[mi]));

        const auto& med = summary->rate.medians;
        const std::size_t third = std::max<std::size_t>(1, med.size() / 3);
        std::vector<double> first, last;
        for (std::size_t i = 0; i < third; ++i) first.push_back(med[i].second);
        for (std::size_t i = med.size() - third; i < med.size(); ++i) last.push_back(med[i].second);
        summary->first_third_median = median_of(first);
        summary->last_third_median  = median_of(last);
        summary->decreasing         = summary->last_third_median < summary->first_third_median;

        if (cfg.norm_kind == NormKind::Lr && cfg.growth == GrowthRule::Power) {
            const double boundary = cfg.lr_r / (4.0 * static_cast<double>(cfg.measure.dim()));
            if (cfg.growth_alpha < boundary)
                summary->regime = "subcritical";
            else if (cfg.growth_alpha > boundary)
                summary->regime = "supercritical";
            else
                summary->regime = "critical";
        }
    }
    return records;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records, bool timing) {
    os << "m,trial,seed,error,slack,bound_t1,bound_c1,bound_t2,bound_t3,diam,wall_ms\n";
    for (const auto& r : records) {
        os << r.m << ',' << r.trial << ',' << r.seed << ',' << fmt17(r.error) << ','
           << fmt17(r.slack) << ',' << fmt17(r.bound_t1) << ',' << fmt17(r.bound_c1) << ','
           << fmt17(r.bound_t2) << ',' << fmt17(r.bound_t3) << ',' << fmt17(r.diam) << ','
           << fmt17(timing ? r.wall_ms : 0.0) << '\n';
    }
}

std::string records_csv(const std::vector<TrialRecord>& records, bool timing) {
    std::ostringstream os;
    write_records_csv(os, records, timing);
    return os.str();
}

namespace {

json record_to_json(const TrialRecord& r, bool timing) {
    return json{{"m", r.m},
                {"trial", r.trial},
                {"seed", r.seed},
                {"error", r.error},
                {"slack", r.slack},
                {"bound_t1", r.bound_t1},
                {"bound_c1", r.bound_c1},
                {"bound_t2", r.bound_t2},
                {"bound_t3", r.bound_t3},
                {"diam", r.diam},
                {"wall_ms", timing ? r.wall_ms : 0.0}};
}

json config_to_json(const ExperimentConfig& cfg) {
    return json{{"measure", cfg.measure.id()},
                {"domain", cfg.domain.to_string()},
                {"p", cfg.p.to_string()},
                {"q", cfg.q.to_string()},
                {"trials", cfg.trials},
                {"base_seed", cfg.base_seed},
                {"norm", cfg.norm_kind == NormKind::Sup ? "sup" : "lr"},
                {"lr_r", cfg.lr_r}};
}

} // namespace

std::string records_json(const std::vector<TrialRecord>& records, bool timing) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r, timing));
    return arr.dump(2);
}

std::string rate_summary_json(const ExperimentConfig& cfg, const RateSummary& summary) {
    json medians = json::array();
    for (const auto& [m, med] : summary.medians) medians.push_back({{"m", m}, {"median", med}});
    json j{{"config", config_to_json(cfg)}, {"medians", medians}};
    if (summary.slope_defined) {
        j["slope"]     = summary.fit.slope;
        j["intercept"] = summary.fit.intercept;
        j["residual"]  = summary.fit.residual;
    } else {
        j["slope"]      = nullptr;
        j["slope_note"] = summary.slope_note;
    }
    return j.dump(2);
}

std::string coverage_json(const ExperimentConfig& cfg, const std::vector<CoverageRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"m", r.m},
                       {"level", r.level},
                       {"bound", r.bound},
                       {"exceed_count", r.exceed_count},
                       {"exceedance", r.exceedance},
                       {"theoretical", r.theoretical},
                       {"binom_se", r.binom_se},
                       {"validated", r.validated}});
    json j{{"config", config_to_json(cfg)}, {"bound", cfg.coverage_bound}, {"table", arr}};
    return j.dump(2);
}

std::string growth_summary_json(const ExperimentConfig& cfg, const GrowthSummary& summary) {
    json diam = json::array();
    for (const auto& [m, dm] : summary.diam_used) diam.push_back({{"m", m}, {"diam", dm}});
    json j{{"config", config_to_json(cfg)},
           {"diam_used", diam},
           {"first_third_median", summary.first_third_median},
           {"last_third_median", summary.last_third_median},
           {"decreasing", summary.decreasing}};
    json medians = json::array();
    for (const auto& [m, med] : summary.rate.medians)
        medians.push_back({{"m", m}, {"median", med}});
    j["medians"] = medians;
    if (summary.rate.slope_defined) j["slope"] = summary.rate.fit.slope;
    if (!summary.regime.empty()) j["regime"] = summary.regime;
    return j.dump(2);
}

} // namespace rff
