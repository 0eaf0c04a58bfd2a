#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rff/feature_set.hpp"
#include "rff/spectral.hpp"

using namespace rff;

namespace {

SpectralMeasure single_atom(std::vector<double> w) {
    return SpectralMeasure::discrete({std::move(w)}, {1.0});
}

} // namespace

TEST_CASE("sample_frequencies: point mass repeats the atom") {
    const auto mu = single_atom({2.0});
    const auto fs = sample_frequencies(mu, 5, 123);
    REQUIRE(fs.size() == 5);
    for (std::int64_t j = 0; j < 5; ++j) CHECK(fs.row(j)[0] == 2.0);
}

TEST_CASE("sample_frequencies: uniform box support and symmetry") {
    const auto mu = SpectralMeasure::uniform_box(2, 1.0);
    const auto fs = sample_frequencies(mu, 10000, 7);
    double mean0 = 0.0, mean1 = 0.0;
    for (std::int64_t j = 0; j < fs.size(); ++j) {
        const auto w = fs.row(j);
        CHECK(w[0] >= -1.0);
        CHECK(w[0] <= 1.0);
        CHECK(w[1] >= -1.0);
        CHECK(w[1] <= 1.0);
        mean0 += w[0];
        mean1 += w[1];
    }
    CHECK(std::abs(mean0 / 10000.0) < 0.05);
    CHECK(std::abs(mean1 / 10000.0) < 0.05);
}

TEST_CASE("sample_frequencies: gaussian second moment matches the law") {
    const auto mu = SpectralMeasure::gaussian_iso(1, 1.0);
    const auto fs = sample_frequencies(mu, 100000, 42);
    double s2 = 0.0;
    for (std::int64_t j = 0; j < fs.size(); ++j) s2 += fs.row(j)[0] * fs.row(j)[0];
    CHECK(std::abs(s2 / 100000.0 - 1.0) < 0.05);
}

TEST_CASE("sample_frequencies: bit-reproducible given (measure, m, seed)") {
    const auto mu = SpectralMeasure::gaussian_iso(3, 0.7);
    const auto a  = sample_frequencies(mu, 257, 99);
    const auto b  = sample_frequencies(mu, 257, 99);
    CHECK(a.data() == b.data());
    const auto c = sample_frequencies(mu, 257, 100);
    CHECK(a.data() != c.data());
}

TEST_CASE("second_moment closed forms") {
    CHECK(second_moment(SpectralMeasure::gaussian_iso(3, 1.0)) == doctest::Approx(3.0));
    CHECK(second_moment(SpectralMeasure::uniform_box(1, 1.0)) == doctest::Approx(1.0 / 3.0));
    CHECK(second_moment(single_atom({0.0})) == 0.0);
    CHECK(second_moment(SpectralMeasure::gaussian_iso(2, 2.0)) == doctest::Approx(0.5));
}

TEST_CASE("sup_moment_T") {
    const MultiIndex z1 = MultiIndex::zeros(1);
    SUBCASE("p=q=0 is 1 for every measure (empty product)") {
        CHECK(sup_moment_T(SpectralMeasure::gaussian_iso(1, 1.0), z1, z1) == 1.0);
        CHECK(sup_moment_T(SpectralMeasure::uniform_box(1, 5.0), z1, z1) == 1.0);
        CHECK(sup_moment_T(single_atom({3.0}), z1, z1) == 1.0);
    }
    SUBCASE("uniform box sup at the corner") {
        const auto mu = SpectralMeasure::uniform_box(2, 2.0);
        CHECK(sup_moment_T(mu, MultiIndex({1, 0}), MultiIndex({0, 1})) == doctest::Approx(4.0));
    }
    SUBCASE("gaussian with nonzero order is rejected") {
        CHECK_THROWS_AS(
            sup_moment_T(SpectralMeasure::gaussian_iso(1, 1.0), MultiIndex({1}), z1),
            UnboundedSupportError);
    }
    SUBCASE("discrete takes the max over atoms") {
        const auto mu = SpectralMeasure::discrete({{1.0}, {-3.0}}, {0.5, 0.5});
        CHECK(sup_moment_T(mu, MultiIndex({1}), MultiIndex({1})) == doctest::Approx(9.0));
    }
}

TEST_CASE("moment_C closed forms") {
    const MultiIndex z1 = MultiIndex::zeros(1);
    SUBCASE("uniform p=q=0 equals the second moment") {
        const auto rep = moment_C(SpectralMeasure::uniform_box(1, 1.0), z1, z1);
        CHECK(rep.cross_C == doctest::Approx(1.0 / 3.0));
        CHECK(rep.exact);
    }
    SUBCASE("single atom finite sum") {
        const auto rep = moment_C(single_atom({2.0}), MultiIndex({1}), MultiIndex({1}));
        CHECK(rep.cross_C == doctest::Approx(16.0)); // |2²|·2²
    }
    SUBCASE("uniform quadrature oracle: ∫ ω⁴/2 dω over [−1,1] = 1/5") {
        const auto rep = moment_C(SpectralMeasure::uniform_box(1, 1.0), MultiIndex({1}),
                                  MultiIndex({1}));
        CHECK(rep.cross_C == doctest::Approx(0.2));
    }
    SUBCASE("gaussian d=2 product form vs Monte Carlo") {
        const auto mu  = SpectralMeasure::gaussian_iso(2, 1.0);
        const auto rep = moment_C(mu, MultiIndex({1, 0}), MultiIndex({0, 1}));
        CHECK(rep.exact);
        // E|ω1 ω2|(ω1²+ω2²) = 2 E|x|³E|x| with x ~ N(0,1): 2·2√(2/π)·√(2/π) = 8/π.
        CHECK(rep.cross_C == doctest::Approx(8.0 / std::numbers::pi).epsilon(1e-12));
    }
}

TEST_CASE("moment_E closed forms and MC fallback") {
    const MultiIndex z1 = MultiIndex::zeros(1);
    CHECK(moment_E(single_atom({2.0}), z1, z1).cross_E == doctest::Approx(2.0));
    CHECK(moment_E(SpectralMeasure::uniform_box(1, 1.0), z1, z1).cross_E ==
          doctest::Approx(0.5));
    CHECK(moment_E(SpectralMeasure::gaussian_iso(1, 1.0), z1, z1).cross_E ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));

    SUBCASE("d >= 2 requires explicit mc_samples") {
        const auto mu       = SpectralMeasure::gaussian_iso(2, 1.0);
        const MultiIndex z2 = MultiIndex::zeros(2);
        CHECK_THROWS_AS(moment_E(mu, z2, z2), InvalidParameterError);
        const auto rep = moment_E(mu, z2, z2, 200000, 11);
        CHECK_FALSE(rep.exact);
        CHECK(rep.mc_samples == 200000);
        // E‖ω‖ for a 2-d standard normal: √(π/2).
        CHECK(rep.cross_E == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(0.02));
    }
}

TEST_CASE("monte carlo error halves when samples quadruple") {
    const auto mu       = SpectralMeasure::uniform_box(2, 1.0);
    const MultiIndex z2 = MultiIndex::zeros(2);
    // Reference via a fine tensor quadrature of E‖ω‖ over [−1,1]²:
    // (1/4)∫∫ √(x²+y²) dx dy = (√2 + asinh(1)) / 3.
    const double exact = (std::numbers::sqrt2 + std::asinh(1.0)) / 3.0;
    auto rms_error = [&](std::uint64_t n) {
        double s = 0.0;
        for (std::uint64_t rep = 0; rep < 30; ++rep) {
            const double est = moment_E(mu, z2, z2, n, 1000 + rep).cross_E;
            s += (est - exact) * (est - exact);
        }
        return std::sqrt(s / 30.0);
    };
    const double e1 = rms_error(2000);
    const double e4 = rms_error(8000);
    CHECK(e4 / e1 > 0.25);
    CHECK(e4 / e1 < 0.85); // ≈ 0.5 up to Monte Carlo noise
}

TEST_CASE("characteristic function") {
    SUBCASE("psi(0) = 1 for every variant") {
        const std::vector<double> z0{0.0};
        CHECK(SpectralMeasure::gaussian_iso(1, 1.0).characteristic(z0) == 1.0);
        CHECK(SpectralMeasure::uniform_box(1, 2.0).characteristic(z0) == 1.0);
        CHECK(single_atom({1.5}).characteristic(z0) == 1.0);
    }
    SUBCASE("gaussian closed form") {
        const std::vector<double> z{1.0};
        CHECK(SpectralMeasure::gaussian_iso(1, 1.0).characteristic(z) ==
              doctest::Approx(0.60653065971263342).epsilon(1e-14));
    }
    SUBCASE("sinc zero at z = 1 when R = pi") {
        const std::vector<double> z{1.0};
        CHECK(SpectralMeasure::uniform_box(1, std::numbers::pi).characteristic(z) ==
              doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("evenness and |psi| <= 1 on random points") {
        const auto mus = {SpectralMeasure::gaussian_iso(2, 1.3),
                          SpectralMeasure::uniform_box(2, 0.8),
                          SpectralMeasure::discrete({{1.0, -0.5}, {0.3, 2.0}}, {0.25, 0.75})};
        std::uint64_t state = 1;
        auto next = [&state]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return static_cast<double>(state >> 11) * 0x1.0p-53 * 8.0 - 4.0;
        };
        for (const auto& mu : mus)
            for (int it = 0; it < 200; ++it) {
                const std::vector<double> z{next(), next()};
                const std::vector<double> nz{-z[0], -z[1]};
                const double v = mu.characteristic(z);
                CHECK(v == mu.characteristic(nz));
                CHECK(std::abs(v) <= 1.0 + 1e-15);
            }
    }
}

TEST_CASE("single-atom empirical characteristic function is exact") {
    const auto mu = single_atom({1.7});
    const auto fs = sample_frequencies(mu, 13, 5);
    for (double z : {0.1, 0.9, -2.3}) {
        double s = 0.0;
        for (std::int64_t j = 0; j < fs.size(); ++j) s += std::cos(fs.row(j)[0] * z);
        const std::vector<double> zv{z};
        // summing m copies and dividing back costs at most a couple of ULP
        CHECK(std::abs(s / 13.0 - mu.characteristic(zv)) < 1e-15);
    }
}

TEST_CASE("discrete validation") {
    CHECK_THROWS_AS(SpectralMeasure::discrete({{1.0}}, {0.9}), InvalidParameterError);
    CHECK_THROWS_AS(SpectralMeasure::discrete({{1.0}, {2.0}}, {1.2, -0.2}),
                    InvalidParameterError);
    CHECK_NOTHROW(SpectralMeasure::discrete({{1.0}, {2.0}}, {0.5, 0.5}));
}

TEST_CASE("feature set CSV round-trip") {
    const auto mu = SpectralMeasure::gaussian_iso(2, 1.0);
    const auto fs = sample_frequencies(mu, 37, 12345);
    const auto path = std::filesystem::temp_directory_path() / "rff_feature_dump_test.csv";
    fs.save_csv(path);
    const auto back = FeatureSet::load_csv(path);
    CHECK(back.size() == fs.size());
    CHECK(back.dim() == fs.dim());
    CHECK(back.seed() == fs.seed());
    CHECK(back.measure_id() == fs.measure_id());
    CHECK(back.data() == fs.data());
    std::filesystem::remove(path);
}
