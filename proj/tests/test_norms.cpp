#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "rff/norms.hpp"

using namespace rff;

namespace {

FeatureSet manual_features(std::vector<double> omegas, std::int64_t m, int d) {
    return FeatureSet(std::move(omegas), m, d, "manual", 0);
}

} // namespace

TEST_CASE("difference_set closed forms") {
    SUBCASE("unit box") {
        const auto s  = CompactSet::box({0.0, 0.0}, {1.0, 1.0});
        const auto sd = s.difference_set();
        CHECK(sd.lower() == std::vector<double>{-1.0, -1.0});
        CHECK(sd.upper() == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("ball centers cancel") {
        const auto s  = CompactSet::ball({3.0, -2.0}, 1.5);
        const auto sd = s.difference_set();
        CHECK(sd.center() == std::vector<double>{0.0, 0.0});
        CHECK(sd.radius() == 3.0);
    }
    SUBCASE("diameter doubles for an interval") {
        const auto s = CompactSet::box({0.0}, {1.0});
        CHECK(s.diameter() == 1.0);
        CHECK(s.difference_set().diameter() == 2.0);
    }
    SUBCASE("|S_delta| <= 2|S| across shapes") {
        const auto b = CompactSet::box({-0.5, 1.0, 2.0}, {0.5, 3.0, 2.5});
        CHECK(b.difference_set().diameter() <= 2.0 * b.diameter() + 1e-15);
        const auto ball = CompactSet::ball({1.0}, 0.7);
        CHECK(ball.difference_set().diameter() <= 2.0 * ball.diameter() + 1e-15);
    }
}

TEST_CASE("compact set volume") {
    CHECK(CompactSet::box({0.0}, {2.0}).volume() == 2.0);
    CHECK(CompactSet::ball({0.0, 0.0}, 1.0).volume() ==
          doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(CompactSet::ball({0.0, 0.0, 0.0}, 1.0).volume() ==
          doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
}

TEST_CASE("gradient_sup_D") {
    SUBCASE("gaussian p=q=0 closed form on [0,1]") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto s  = CompactSet::box({0.0}, {1.0});
        bool exact    = false;
        const double d = gradient_sup_D(mu, MultiIndex::zeros(1), MultiIndex::zeros(1), s, &exact);
        CHECK(exact);
        CHECK(d == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    }
    SUBCASE("gaussian closed form caps at the mode radius") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto s  = CompactSet::box({0.0}, {10.0});
        const double d = gradient_sup_D(mu, MultiIndex::zeros(1), MultiIndex::zeros(1), s);
        CHECK(d == doctest::Approx(std::exp(-0.5)).epsilon(1e-14)); // max of |z|e^{−z²/2}
    }
    SUBCASE("constant field has zero gradient sup") {
        const auto mu = SpectralMeasure::discrete({{0.0}}, {1.0});
        const auto s  = CompactSet::box({0.0}, {1.0});
        CHECK(gradient_sup_D(mu, MultiIndex::zeros(1), MultiIndex::zeros(1), s) == 0.0);
    }
    SUBCASE("grid estimate is close to a dense scan (box, p=q=(1))") {
        const auto mu = SpectralMeasure::uniform_box(1, 2.0);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const MultiIndex p({1}), q({1});
        const double d_hat = gradient_sup_D(mu, p, q, s);
        double dense = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const std::vector<double> z{-2.0 + 4.0 * i / 20000.0};
            dense = std::max(dense, std::abs(psi_derivative(mu, MultiIndex({3}), z)));
        }
        CHECK(d_hat == doctest::Approx(dense).epsilon(1e-3));
        CHECK(2.0 * d_hat >= dense); // what the certificate actually uses
    }
}

TEST_CASE("empirical_lipschitz") {
    SUBCASE("constant error field: zero") {
        const auto mu = SpectralMeasure::discrete({{0.0}}, {1.0});
        const auto fs = sample_frequencies(mu, 4, 1);
        const auto s  = CompactSet::box({0.0}, {1.0});
        CHECK(empirical_lipschitz(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s) == 0.0);
    }
    SUBCASE("gaussian p=q=0 on [0,1]: D term + empirical mean of |omega|") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = manual_features({1.0, 2.0}, 2, 1);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const double L =
            empirical_lipschitz(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s);
        CHECK(L == doctest::Approx(std::exp(-0.5) + 1.5).epsilon(1e-12));
    }
    SUBCASE("D term zero leaves the empirical part: (1+2)/2") {
        const auto mu = SpectralMeasure::discrete({{0.0}}, {1.0}); // constant target
        const auto fs = manual_features({1.0, 2.0}, 2, 1);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const double L =
            empirical_lipschitz(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s);
        CHECK(L == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("empirical term is dominated by A_pq (Cauchy-Schwarz)") {
        const auto mu = SpectralMeasure::gaussian_iso(2, 1.0);
        const auto fs = sample_frequencies(mu, 50, 9);
        const MultiIndex p({1, 0}), q({0, 0});
        CHECK(empirical_gradient_term(fs, p, q) <= a_pq(fs, p, q) + 1e-12);
    }
}

TEST_CASE("sup_error_certified") {
    SUBCASE("single-atom measure: exact estimator, zero error") {
        const auto mu = SpectralMeasure::discrete({{1.5}}, {1.0});
        const auto fs = sample_frequencies(mu, 7, 3);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto rep =
            sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 1e-3);
        CHECK(rep.value <= 1e-12);
    }
    SUBCASE("p=q=0 error is at most 2") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 8, 17);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto rep =
            sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 1e-2);
        CHECK(rep.value <= 2.0);
        CHECK(rep.certificate_slack <= 1e-2 + 1e-15);
        CHECK(rep.grid_points >= 1);
    }
    SUBCASE("translation invariance of the certified sup") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 32, 23);
        const auto s1 = CompactSet::box({0.0}, {1.0});
        const auto s2 = CompactSet::box({5.0}, {6.0});
        const auto r1 =
            sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s1, 1e-3);
        const auto r2 =
            sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s2, 1e-3);
        CHECK(r1.value == doctest::Approx(r2.value).epsilon(1e-12));
    }
    SUBCASE("grid budget is enforced") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 8, 2);
        const auto s  = CompactSet::box({0.0}, {1.0});
        CHECK_THROWS_AS(sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s,
                                            1e-9, 1000),
                        GridBudgetExceededError);
    }
    SUBCASE("finer grids never decrease the reported max") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 64, 44);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto field = error_field(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu);
        const double L =
            empirical_lipschitz(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s);
        double prev = 0.0;
        for (double slack : {4e-3, 2e-3, 1e-3, 5e-4}) {
            const auto rep = certified_sup_on_difference_set(field, s, L, slack);
            CHECK(rep.value >= prev - 1e-15);
            prev = rep.value;
        }
    }
    SUBCASE("certified sandwich against a 4x finer reference grid") {
        std::mt19937_64 gen(101);
        std::uniform_real_distribution<double> u01(0.2, 1.2);
        for (int trial = 0; trial < 10; ++trial) {
            const auto mu = SpectralMeasure::uniform_box(1, u01(gen) + 0.5);
            const auto fs = sample_frequencies(mu, 16 + 8 * trial, 300 + trial);
            const auto s  = CompactSet::box({0.0}, {u01(gen)});
            const MultiIndex p({trial % 2}), q({0});
            const auto rep = sup_error_certified(fs, p, q, mu, s, 2e-3);
            const auto field = error_field(fs, p, q, mu);
            // reference: 4x finer aligned grid over the half-domain [0, hi]
            const double hi = s.difference_set().upper()[0];
            const std::int64_t n = 4 * (rep.grid_points - 1) + 1;
            double ref = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                const std::vector<double> z{hi * static_cast<double>(i) /
                                            static_cast<double>(n - 1)};
                ref = std::max(ref, std::abs(field(z)));
            }
            CHECK(ref >= rep.value - 1e-15);
            CHECK(ref <= rep.value + rep.certificate_slack + 1e-15);
        }
    }
}

TEST_CASE("sup certification over a ball difference set") {
    // d=1 ball == interval: must agree with the box route.
    const auto mu   = SpectralMeasure::gaussian_iso(1, 1.0);
    const auto fs   = sample_frequencies(mu, 48, 21);
    const auto ball = CompactSet::ball({0.5}, 0.5);
    const auto box  = CompactSet::box({0.0}, {1.0});
    const auto z    = MultiIndex::zeros(1);
    const auto a    = sup_error_certified(fs, z, z, mu, ball, 1e-3);
    const auto b    = sup_error_certified(fs, z, z, mu, box, 1e-3);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));

    // d=2 ball: the certificate covers the enclosing box, so it upper-bounds
    // a dense scan restricted to the ball itself.
    const auto mu2 = SpectralMeasure::gaussian_iso(2, 1.0);
    const auto fs2 = sample_frequencies(mu2, 16, 34);
    const auto b2  = CompactSet::ball({0.0, 0.0}, 0.4);
    const auto z2  = MultiIndex::zeros(2);
    const auto rep = sup_error_certified(fs2, z2, z2, mu2, b2, 5e-3);
    const auto field = error_field(fs2, z2, z2, mu2);
    double dense = 0.0;
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            const std::vector<double> zz{-0.8 + 1.6 * i / 60.0, -0.8 + 1.6 * j / 60.0};
            if (zz[0] * zz[0] + zz[1] * zz[1] <= 0.64) dense = std::max(dense, std::abs(field(zz)));
        }
    CHECK(dense <= rep.value + rep.certificate_slack + 1e-12);
}

TEST_CASE("lr_error") {
    SUBCASE("single-atom measure: zero") {
        const auto mu = SpectralMeasure::discrete({{1.5}}, {1.0});
        const auto fs = sample_frequencies(mu, 7, 3);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto rep =
            lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 2.0);
        CHECK(rep.value <= 1e-12);
    }
    SUBCASE("constant injected field integrates to c · vol^{2/r}") {
        const auto s = CompactSet::box({0.0, 0.0}, {2.0, 1.0});
        const double c = 0.37;
        const DifferenceField constant = [c](std::span<const double>) { return c; };
        for (double r : {1.0, 2.0, 3.5}) {
            const auto rep = lr_norm_shift_invariant(constant, s, r);
            CHECK(rep.value == doctest::Approx(c * std::pow(s.volume(), 2.0 / r)).epsilon(1e-12));
        }
    }
    SUBCASE("normalized L^r is nondecreasing in r on a non-constant field") {
        const auto s = CompactSet::box({0.0}, {1.0});
        const DifferenceField field = [](std::span<const double> z) {
            return std::cos(3.0 * z[0]) + 0.2 * z[0] * z[0];
        };
        double prev = 0.0;
        const double vol = s.volume();
        for (double r : {1.0, 1.5, 2.0, 3.0, 5.0}) {
            const auto rep   = lr_norm_shift_invariant(field, s, r, QuadratureSpec::tensor_grid(256));
            const double normalized = rep.value / std::pow(vol * vol, 1.0 / r);
            CHECK(normalized >= prev - 1e-9);
            prev = normalized;
        }
    }
    SUBCASE("sup dominates: lr <= sup · vol^{2/r}") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 128, 71);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto sup =
            sup_error_certified(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 1e-4);
        const auto lr = lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 2.0);
        CHECK(lr.value <= (sup.value + sup.certificate_slack) * std::pow(s.volume(), 1.0) + 1e-6);
    }
    SUBCASE("monte carlo agrees with the tensor grid and reports an SE") {
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 64, 5);
        const auto s  = CompactSet::box({0.0}, {1.0});
        const auto grid = lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 2.0,
                                   QuadratureSpec::tensor_grid(128));
        const auto mc = lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, s, 2.0,
                                 QuadratureSpec::monte_carlo(100000, 9));
        CHECK(mc.certificate_slack > 0.0);
        CHECK(std::abs(mc.value - grid.value) <= 5.0 * mc.certificate_slack + 1e-4);
    }
    SUBCASE("tensor grid rejects d > 3") {
        const auto mu = SpectralMeasure::gaussian_iso(4, 1.0);
        const auto fs = sample_frequencies(mu, 4, 5);
        const auto s  = CompactSet::box({0, 0, 0, 0}, {1, 1, 1, 1});
        CHECK_THROWS_AS(
            lr_error(fs, MultiIndex::zeros(4), MultiIndex::zeros(4), mu, s, 2.0),
            UnsupportedDimensionError);
    }
    SUBCASE("ball quadrature approximates the box result it encloses") {
        // d=1 ball == interval; the two code paths must agree.
        const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
        const auto fs = sample_frequencies(mu, 32, 13);
        const auto ball = CompactSet::ball({0.5}, 0.5);
        const auto box  = CompactSet::box({0.0}, {1.0});
        const auto a = lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, ball, 2.0,
                                QuadratureSpec::tensor_grid(64));
        const auto b = lr_error(fs, MultiIndex::zeros(1), MultiIndex::zeros(1), mu, box, 2.0,
                                QuadratureSpec::tensor_grid(64));
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
    }
}
