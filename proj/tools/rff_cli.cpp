// rff — bound calculators, moment reports, and seeded experiments.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rff/bounds.hpp"
#include "rff/harness.hpp"
#include "rff/norms.hpp"

using namespace rff;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_check      = 3;

struct MeasureFlags {
    std::string kind = "gaussian_iso";
    int d            = 1;
    double gamma     = 1.0;
    double R         = 1.0;
    std::string atoms;
    std::string weights;

    void attach(CLI::App* cmd) {
        cmd->add_option("--measure", kind, "gaussian_iso|uniform_box|discrete")
            ->default_val("gaussian_iso");
        cmd->add_option("--d", d, "dimension");
        cmd->add_option("--gamma", gamma, "gaussian length-scale");
        cmd->add_option("--R", R, "uniform box half-width");
        cmd->add_option("--atoms", atoms, "discrete atoms, e.g. \"1,0;0,1\"");
        cmd->add_option("--weights", weights, "discrete weights, e.g. \"0.5,0.5\"");
    }

    SpectralMeasure build() const {
        if (kind == "gaussian_iso") return SpectralMeasure::gaussian_iso(d, gamma);
        if (kind == "uniform_box") return SpectralMeasure::uniform_box(d, R);
        if (kind == "discrete") {
            std::vector<std::vector<double>> atom_list;
            std::string part;
            std::istringstream is(atoms);
            while (std::getline(is, part, ';')) {
                std::vector<double> pt;
                std::string c;
                std::istringstream ps(part);
                while (std::getline(ps, c, ',')) pt.push_back(std::stod(c));
                if (!pt.empty()) atom_list.push_back(std::move(pt));
            }
            std::vector<double> weight_list;
            if (!weights.empty()) {
                std::string c;
                std::istringstream ws(weights);
                while (std::getline(ws, c, ',')) weight_list.push_back(std::stod(c));
            } else {
                weight_list.assign(atom_list.size(), 1.0 / static_cast<double>(atom_list.size()));
            }
            return SpectralMeasure::discrete(std::move(atom_list), std::move(weight_list));
        }
        throw InvalidParameterError("--measure must be gaussian_iso|uniform_box|discrete");
    }
};

MultiIndex parse_index(const std::string& text, int d) {
    if (text.empty()) return MultiIndex::zeros(d);
    std::vector<int> entries;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) entries.push_back(std::stoi(cur));
    return MultiIndex(std::move(entries));
}

json report_json(const BoundReport& rep) {
    json j{{"bound_value", rep.bound_value},
           {"theorem", rep.theorem_tag},
           {"confidence_input", rep.confidence},
           {"vacuous", rep.vacuous}};
    json cons = json::object();
    for (const auto& [k, v] : rep.constituents) cons[k] = v;
    j["constituents"] = cons;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random Fourier feature error bounds and experiments"};
    app.require_subcommand(1);

    int threads = 1;
    std::string format = "csv";
    std::optional<std::uint64_t> seed_override;
    bool timing = false;
    app.add_option("--threads", threads, "worker count for experiments")->default_val(1);
    app.add_option("--format", format, "trial record format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    app.add_option("--seed", seed_override, "override the config base_seed");
    app.add_flag("--timing", timing, "emit real wall_ms (breaks byte-identical output)");

    // ---- bound ------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "evaluate a finite-sample bound, print JSON");
    bound->require_subcommand(1);
    bound->fallthrough();

    struct {
        int d = 1;
        double diam = 1.0, sigma = 1.0, tau = 1.0, r = 2.0, eps = 0.5;
        std::int64_t m = 1;
        std::string p, q;
        MeasureFlags measure;
        std::vector<double> set_lower, set_upper, set_center;
        double set_radius = 0.0;
        double sigma2_b = 0.0, L_b = 0.0, D = -1.0, E = -1.0;
        std::int64_t mc_samples = 200000;
    } b;

    auto* t1 = bound->add_subcommand("t1", "uniform kernel-error tail");
    t1->fallthrough();
    t1->add_option("--d", b.d)->required();
    t1->add_option("--diam", b.diam, "diameter |S|")->required();
    t1->add_option("--sigma", b.sigma, "sqrt of the second moment")->required();
    t1->add_option("--m", b.m)->required();
    t1->add_option("--tau", b.tau)->required();

    auto* c1 = bound->add_subcommand("c1", "L^r bound via the volume factor");
    c1->fallthrough();
    c1->add_option("--d", b.d)->required();
    c1->add_option("--diam", b.diam)->required();
    c1->add_option("--sigma", b.sigma)->required();
    c1->add_option("--m", b.m)->required();
    c1->add_option("--tau", b.tau)->required();
    c1->add_option("--r", b.r)->required();

    auto* t2 = bound->add_subcommand("t2", "direct L^r tail (Khintchine route)");
    t2->fallthrough();
    t2->add_option("--d", b.d)->required();
    t2->add_option("--diam", b.diam)->required();
    t2->add_option("--m", b.m)->required();
    t2->add_option("--tau", b.tau)->required();
    t2->add_option("--r", b.r)->required();

    auto* t3 = bound->add_subcommand("t3", "derivative-error tail (bounded support)");
    t3->fallthrough();
    t3->add_option("--diam", b.diam)->required();
    t3->add_option("--m", b.m)->required();
    t3->add_option("--tau", b.tau)->required();
    t3->add_option("--p", b.p, "multi-index, e.g. \"1,0\"");
    t3->add_option("--q", b.q);
    b.measure.attach(t3);

    auto* t4 = bound->add_subcommand("t4", "failure probability via the Bernstein route");
    t4->fallthrough();
    t4->add_option("--eps", b.eps)->required();
    t4->add_option("--m", b.m)->required();
    t4->add_option("--p", b.p);
    t4->add_option("--q", b.q);
    t4->add_option("--set-lower", b.set_lower, "box lower corner");
    t4->add_option("--set-upper", b.set_upper, "box upper corner");
    t4->add_option("--set-center", b.set_center, "ball center");
    t4->add_option("--set-radius", b.set_radius, "ball radius");
    t4->add_option("--sigma2-b", b.sigma2_b, "override Bernstein variance parameter");
    t4->add_option("--L-b", b.L_b, "override Bernstein scale parameter");
    t4->add_option("--D", b.D, "override the gradient-sup constant");
    t4->add_option("--E", b.E, "override the first-order cross moment");
    t4->add_option("--mc-samples", b.mc_samples, "samples for the moment fallback");
    b.measure.attach(t4);

    // ---- moments ----------------------------------------------------------
    auto* moments = app.add_subcommand("moments", "print a moment report as JSON");
    moments->fallthrough();
    struct {
        MeasureFlags measure;
        std::string p, q;
        std::int64_t mc_samples = 0;
        std::uint64_t seed      = 0;
    } mo;
    mo.measure.attach(moments);
    moments->add_option("--p", mo.p);
    moments->add_option("--q", mo.q);
    moments->add_option("--mc-samples", mo.mc_samples);
    moments->add_option("--mc-seed", mo.seed);

    // ---- experiment ---------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "run a seeded Monte Carlo experiment");
    experiment->fallthrough();
    std::string mode;
    std::string config_path, out_dir;
    bool check = false;
    experiment->add_option("mode", mode, "rate|coverage|growth")
        ->required()
        ->check(CLI::IsMember({"rate", "coverage", "growth"}));
    experiment->add_option("--config", config_path, "key = value config file")->required();
    experiment->add_option("--out", out_dir, "output directory")->required();
    experiment->add_flag("--check", check, "validate the run; exit 3 on failure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) {
            if (t1->parsed()) {
                emit(report_json(thm1_bound(b.d, b.diam, b.sigma, b.m, b.tau)));
            } else if (c1->parsed()) {
                emit(report_json(cor1_bound(b.d, b.diam, b.sigma, b.m, b.tau, b.r)));
            } else if (t2->parsed()) {
                emit(report_json(thm2_bound(b.d, b.diam, b.m, b.tau, b.r)));
            } else if (t3->parsed()) {
                const auto mu = b.measure.build();
                const auto p  = parse_index(b.p, mu.dim());
                const auto q  = parse_index(b.q, mu.dim());
                emit(report_json(thm3_bound(mu.dim(), p, q, b.diam, mu, b.m, b.tau)));
            } else if (t4->parsed()) {
                const auto mu = b.measure.build();
                const auto p  = parse_index(b.p, mu.dim());
                const auto q  = parse_index(b.q, mu.dim());
                CompactSet s  = b.set_center.empty()
                                    ? CompactSet::box(b.set_lower, b.set_upper)
                                    : CompactSet::ball(b.set_center, b.set_radius);
                double sigma2 = b.sigma2_b, L = b.L_b;
                if (sigma2 <= 0.0 || L <= 0.0) {
                    const auto bp = bernstein_params(mu, p, q);
                    if (sigma2 <= 0.0) sigma2 = bp.sigma2;
                    if (L <= 0.0) L = bp.L;
                }
                const double D =
                    b.D >= 0.0 ? b.D : gradient_sup_D(mu, p, q, s);
                const double E = b.E >= 0.0
                                     ? b.E
                                     : moment_E(mu, p, q,
                                                static_cast<std::uint64_t>(b.mc_samples), 1)
                                           .cross_E;
                emit(report_json(
                    thm4_report(mu.dim(), p, q, b.eps, b.m, mu, s, sigma2, L, D, E)));
            }
            return 0;
        }

        if (moments->parsed()) {
            const auto mu  = mo.measure.build();
            const auto p   = parse_index(mo.p, mu.dim());
            const auto q   = parse_index(mo.q, mu.dim());
            const auto rep = moments_report(mu, p, q,
                                            static_cast<std::uint64_t>(mo.mc_samples), mo.seed);
            json j{{"measure", mu.id()},
                   {"p", p.to_string()},
                   {"q", q.to_string()},
                   {"exact", rep.exact},
                   {"mc_samples", rep.mc_samples}};
            j["sigma2"]  = rep.sigma2;
            j["sup_T"]   = std::isnan(rep.sup_T) ? json() : json(rep.sup_T);
            j["cross_C"] = rep.cross_C;
            j["cross_E"] = rep.cross_E;
            emit(j);
            return 0;
        }

        // experiment
        ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
        if (seed_override) cfg.base_seed = *seed_override;
        if (timing) cfg.timing = true;
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path out(out_dir);
        const std::string record_name =
            !cfg.out_csv.empty() ? cfg.out_csv
                                 : mode + (format == "json" ? "_records.json" : ".csv");
        const std::string summary_name =
            !cfg.out_summary.empty() ? cfg.out_summary : mode + "_summary.json";

        auto write_records = [&](const std::vector<TrialRecord>& records) {
            write_file(out / record_name, format == "json"
                                              ? records_json(records, cfg.timing)
                                              : records_csv(records, cfg.timing));
        };

        bool check_ok = true;
        std::string check_note;

        if (mode == "rate") {
            RateSummary summary;
            const auto records = run_rate_experiment(cfg, threads, &summary);
            write_records(records);
            write_file(out / summary_name, rate_summary_json(cfg, summary));
            if (summary.slope_defined)
                std::fprintf(stderr, "slope %.4f over %zu m-values\n", summary.fit.slope,
                             summary.medians.size());
            else
                std::fprintf(stderr, "slope undefined: %s\n", summary.slope_note.c_str());
            if (check) {
                check_ok = summary.slope_defined &&
                           summary.fit.slope >= cfg.check_slope_min &&
                           summary.fit.slope <= cfg.check_slope_max;
                check_note = "slope within [" + std::to_string(cfg.check_slope_min) + ", " +
                             std::to_string(cfg.check_slope_max) + "]";
            }
        } else if (mode == "coverage") {
            std::vector<TrialRecord> records;
            const auto rows = run_coverage_experiment(cfg, threads, &records);
            write_records(records);
            write_file(out / summary_name, coverage_json(cfg, rows));
            for (const auto& row : rows)
                std::fprintf(stderr, "m=%lld level=%g exceedance=%g theoretical=%g %s\n",
                             static_cast<long long>(row.m), row.level, row.exceedance,
                             row.theoretical, row.validated ? "validated" : "NOT validated");
            if (check) {
                for (const auto& row : rows) check_ok = check_ok && row.validated;
                check_note = "all coverage rows validated";
            }
        } else {
            GrowthSummary summary;
            const auto records = run_growing_diameter(cfg, threads, &summary);
            write_records(records);
            write_file(out / summary_name, growth_summary_json(cfg, summary));
            std::fprintf(stderr, "trend: first-third median %.5g, last-third %.5g (%s)\n",
                         summary.first_third_median, summary.last_third_median,
                         summary.decreasing ? "decreasing" : "non-decreasing");
            if (check) {
                if (cfg.growth == GrowthRule::Exponential && cfg.norm_kind == NormKind::Sup) {
                    check_ok   = summary.decreasing;
                    check_note = "sup error decreasing under exponential growth";
                } else if (cfg.growth == GrowthRule::Power &&
                           cfg.norm_kind == NormKind::Lr && summary.regime == "supercritical") {
                    check_ok   = !summary.decreasing;
                    check_note = "supercritical L^r growth flagged non-decreasing";
                } else {
                    check_note = "no expectation defined for this rule/norm combination";
                }
            }
        }

        if (check) {
            std::fprintf(stderr, "check: %s (%s)\n", check_ok ? "PASS" : "FAIL",
                         check_note.c_str());
            if (!check_ok) return exit_check;
        }
        return 0;
    } catch (const InvalidParameterError& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return exit_validation;
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return exit_validation;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return exit_validation;
    }
}
