#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tvarma/inversion.hpp"
#include "tvarma/process.hpp"

using namespace tvarma;

namespace {
const TruncationPolicy kPolicy{};
}

TEST_CASE("invertibility report") {
    SUBCASE("constant MA(1) with modulus below one converges") {
        auto path = constantPath({}, {0.5});
        auto rep = invertibilityReport(path, 0, {-5, -15, -30}, kPolicy);
        CHECK(rep.converged);
        CHECK(rep.decayFlag);
        CHECK(rep.absSum == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(rep.thetaAtProbes(1) == doctest::Approx(std::pow(-0.5, 15)).epsilon(1e-10));
    }
    SUBCASE("unit MA root never decays") {
        auto path = constantPath({}, {1.0});
        auto rep = invertibilityReport(path, 0, {}, TruncationPolicy{1e-10, 3000});
        CHECK_FALSE(rep.converged);
        CHECK_FALSE(rep.decayFlag);
    }
    SUBCASE("per-segment invertible break path converges") {
        std::vector<SegmentParams> segs{{0.0, {}, {0.6}, 1.0}, {0.0, {}, {-0.4}, 2.0},
                                        {0.0, {}, {0.8}, 1.0}};
        auto path = breakPath(segs, {-40, -10});
        auto rep = invertibilityReport(path, 0, {}, kPolicy);
        CHECK(rep.converged);
    }
    SUBCASE("mirror of the stability diagnostics") {
        std::mt19937_64 rng(64);
        auto path = testutil::randomTablePath(rng, 2, 2, -400, 500, 0.5, 0.5);
        auto rep = invertibilityReport(path, 40, {}, kPolicy);
        auto mirrored = stabilityReport(maMirrorPath(path), 40, {}, kPolicy);
        CHECK(rep.absSum == doctest::Approx(mirrored.absSum).epsilon(1e-10));
        CHECK(rep.converged == mirrored.absSumConverged);
    }
}

TEST_CASE("innovation recovery") {
    SUBCASE("pure AR recovery is exact after p observations") {
        auto path = constantPath({0.6, -0.2}, {}, 0.4, 1.0);
        TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 59};
        auto run = simulate(model, 21, std::nullopt, 100);
        auto rec = recoverErrors(path, {run.start, run.y}, kPolicy);
        CHECK(rec.start <= 2);
        for (Index t = rec.start; t <= 59; ++t)
            CHECK(rec.eps(t - rec.start) == doctest::Approx(run.epsAt(t)).epsilon(1e-10));
    }
    SUBCASE("constant ARMA(1,1) recovery within truncation error") {
        auto path = constantPath({0.5}, {0.4}, 0.3, 1.0);
        TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 79};
        auto run = simulate(model, 33, std::nullopt, 200);
        auto rec = recoverErrors(path, {run.start, run.y}, kPolicy);
        REQUIRE(rec.start <= 60);
        Scalar worst = 0.0;
        for (Index t = rec.start; t <= 79; ++t)
            worst = std::max(worst, std::abs(rec.eps(t - rec.start) - run.epsAt(t)));
        CHECK(worst <= 1e-6);
    }
    SUBCASE("near-unit MA root needs a long history") {
        auto path = constantPath({0.3}, {0.95});
        TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 99};
        auto run = simulate(model, 5, std::nullopt, 200);
        try {
            auto rec = recoverErrors(path, {run.start, run.y}, kPolicy);
            // acceptable only when every emitted bound is honest and small
            CHECK(rec.tailBound.maxCoeff() <= 1e-8);
        } catch (const InsufficientHistoryError& e) {
            CHECK(e.requiredLength > 200);
        }
    }
    SUBCASE("non-invertible path refuses") {
        auto path = constantPath({0.3}, {1.2});
        Vector y = Vector::Random(50);
        CHECK_THROWS_AS(recoverErrors(path, {0, y}, kPolicy), NotInvertibleError);
    }
}
