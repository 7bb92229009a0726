#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tvarma/process.hpp"

using namespace tvarma;

namespace {

InitialValues initialFromRun(const SimulationRun& run, const CoefficientPath& path, Index s) {
    InitialValues init;
    init.y.resize(path.p());
    for (int m = 0; m < path.p(); ++m) init.y(m) = run.yAt(s - m);
    init.eps.resize(path.q());
    for (int l = 0; l < path.q(); ++l) init.eps(l) = run.epsAt(s - l);
    return init;
}

}  // namespace

TEST_CASE("simulated run satisfies the model equation pointwise") {
    std::mt19937_64 rng(42);
    auto path = testutil::randomTablePath(rng, 2, 2, -600, 700, 0.5, 0.6);
    TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 60};
    auto run = simulate(model, 1234, std::nullopt, 50);
    for (Index t = model.tMin + 4; t <= model.tMax; ++t) {
        Scalar rhs = path.drift(t) + run.epsAt(t);
        for (int m = 1; m <= 2; ++m) rhs += path.phi(m, t) * run.yAt(t - m);
        for (int l = 1; l <= 2; ++l) rhs += path.theta(l, t) * run.epsAt(t - l);
        CHECK(run.yAt(t) == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("all-zero coefficients reduce to pure noise") {
    auto path = constantPath({0.0}, {0.0}, 0.0, 1.0);
    TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 200};
    auto run = simulate(model, 9, std::nullopt, 0);
    for (Index t = 0; t <= 200; ++t) CHECK(run.yAt(t) == run.epsAt(t));
}

TEST_CASE("constant AR(1) with drift settles at the fixed point of means") {
    auto path = constantPath({0.5}, {}, 1.0, 1e-6);
    TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 0};
    auto run = simulate(model, 5, std::nullopt, 600);
    CHECK(run.yAt(0) == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("student-t innovations have the path variance") {
    auto path = constantPath({}, {}, 0.0, 2.5);
    TvArmaModel model{path, NoiseFamily::StudentT, 6.0, 0, 200000};
    auto run = simulate(model, 77, std::nullopt, 0);
    const Scalar var = run.eps.squaredNorm() / static_cast<Scalar>(run.eps.size());
    CHECK(var == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("simulated innovations look like a martingale difference") {
    auto path = constantPath({}, {}, 0.0, 1.0);
    TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 100000 - 1};
    auto run = simulate(model, 2024, std::nullopt, 0);
    const Index n = run.eps.size();
    const Scalar mean = run.eps.mean();
    const Scalar var = (run.eps.array() - mean).square().sum() / static_cast<Scalar>(n);
    for (int lag = 1; lag <= 10; ++lag) {
        Scalar acc = 0.0;
        for (Index i = lag; i < n; ++i) acc += (run.eps(i) - mean) * (run.eps(i - lag) - mean);
        const Scalar rho = acc / (static_cast<Scalar>(n) * var);
        CHECK(std::abs(rho) <= 4.0 / std::sqrt(static_cast<Scalar>(n)));
    }
}

TEST_CASE("explicit representation reproduces the simulated value") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const int p = 1 + static_cast<int>(rng() % 3);
        const int q = static_cast<int>(rng() % 3);
        auto path = testutil::randomTablePath(rng, p, q, -40, 120, 0.6, 0.6);
        TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, -20, 70};
        auto run = simulate(model, 100 + rep, std::nullopt, 15);
        std::uniform_int_distribution<Index> pick(-10, 60);
        for (int c = 0; c < 12; ++c) {
            Index s = pick(rng), t = pick(rng);
            if (s > t) std::swap(s, t);
            if (s == t) ++t;
            auto init = initialFromRun(run, path, s);
            Vector future(t - s);
            for (Index r = s + 1; r <= t; ++r) future(r - s - 1) = run.epsAt(r);
            const Scalar v = represent(path, t, s, init.y, init.eps, future);
            CHECK(closeTo(v, run.yAt(t), 1e-9, 1e-9));
        }
    }
}

TEST_CASE("one-step representation is the model equation") {
    std::mt19937_64 rng(77);
    auto path = testutil::randomTablePath(rng, 2, 1, -10, 40, 0.7, 0.7);
    TvArmaModel model{path, NoiseFamily::Gaussian, 6.0, 0, 20};
    auto run = simulate(model, 8, std::nullopt, 5);
    const Index t = 12, s = t - 1;
    auto init = initialFromRun(run, path, s);
    Vector future(1);
    future(0) = run.epsAt(t);
    const Scalar direct = path.drift(t) + path.phi(1, t) * run.yAt(t - 1) +
                          path.phi(2, t) * run.yAt(t - 2) + run.epsAt(t) +
                          path.theta(1, t) * run.epsAt(t - 1);
    CHECK(represent(path, t, s, init.y, init.eps, future) ==
          doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("AR(1) representation collapses to the phi-power form") {
    const Scalar phi = 0.8, drift = 0.3;
    auto path = constantPath({phi}, {}, drift, 1.0);
    const Index s = 0, t = 9;
    std::mt19937_64 rng(55);
    std::normal_distribution<Scalar> normal(0.0, 1.0);
    Vector future(t - s);
    for (Index i = 0; i < t - s; ++i) future(i) = normal(rng);
    Vector y0(1);
    y0(0) = 1.7;
    Scalar textbook = std::pow(phi, t - s) * y0(0);
    for (Index r = s + 1; r <= t; ++r)
        textbook += std::pow(phi, t - r) * (drift + future(r - s - 1));
    CHECK(represent(path, t, s, y0, Vector(), future) ==
          doctest::Approx(textbook).epsilon(1e-12));
    CHECK_THROWS_AS(represent(path, 3, 3, y0, Vector(), future), std::invalid_argument);
}

TEST_CASE("innovation decomposition matches the direct forcing sum") {
    std::mt19937_64 rng(500);
    auto path = testutil::randomTablePath(rng, 2, 2, -20, 60, 0.7, 0.7);
    const Index s = 10, t = 16;
    const int q = path.q();
    std::normal_distribution<Scalar> normal(0.0, 1.0);
    Vector eps(t - (s + 1 - q) + 1);
    for (Index i = 0; i < eps.size(); ++i) eps(i) = normal(rng);
    auto epsAt = [&](Index r) { return eps(r - (s + 1 - q)); };

    auto parts = decomposeInnovations(path, t, s, eps);
    Scalar direct = 0.0;
    for (Index r = s + 1; r <= t; ++r) {
        Scalar u = epsAt(r);
        for (int l = 1; l <= q; ++l) u += path.theta(l, r) * epsAt(r - l);
        direct += green(path, t, r) * u;
    }
    CHECK(parts.unobservable + parts.observable == doctest::Approx(direct).epsilon(1e-10));

    SUBCASE("one step gives eps_t and the lagged theta sum") {
        auto oneStep = decomposeInnovations(path, t, t - 1, eps.tail(q + 1));
        CHECK(oneStep.unobservable == doctest::Approx(epsAt(t)).epsilon(1e-12));
        Scalar lagged = 0.0;
        for (int l = 1; l <= q; ++l) lagged += path.theta(l, t) * epsAt(t - l);
        CHECK(oneStep.observable == doctest::Approx(lagged).epsilon(1e-12));
    }
    SUBCASE("pure AR has no observable part") {
        auto arPath = testutil::randomTablePath(rng, 2, 0, -20, 60);
        Vector e = eps.tail(t - s);
        auto p2 = decomposeInnovations(arPath, t, s, e);
        CHECK(p2.observable == 0.0);
    }
}

TEST_CASE("companion product entries are fundamental solutions") {
    SUBCASE("identity at t = s") {
        std::mt19937_64 rng(1);
        auto path = testutil::randomTablePath(rng, 3, 0, 0, 20);
        CHECK(companionProduct(path, 5, 5).isIdentity(0.0));
    }
    SUBCASE("order one is the Green function itself") {
        auto path = constantPath({0.7});
        const Matrix c = companionProduct(path, 9, 3);
        CHECK(c(0, 0) == doctest::Approx(green(path, 9, 3)).epsilon(1e-12));
    }
    SUBCASE("general entries") {
        std::mt19937_64 rng(2);
        for (int rep = 0; rep < 6; ++rep) {
            const int p = 1 + static_cast<int>(rng() % 4);
            auto path = testutil::randomTablePath(rng, p, 0, -15, 40);
            const Index s = 0, t = s + 7;
            const Matrix c = companionProduct(path, t, s);
            for (int n = 0; n < p; ++n)
                for (int m = 1; m <= p; ++m)
                    CHECK(c(n, m - 1) ==
                          doctest::Approx(greenFundamental(path, m, t - n, s)).epsilon(1e-10));
        }
    }
}
