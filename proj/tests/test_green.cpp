#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tvarma/green.hpp"

using namespace tvarma;

TEST_CASE("initial values hold for any path") {
    std::mt19937_64 rng(7);
    auto path = testutil::randomTablePath(rng, 3, 2, -20, 60);
    CHECK(green(path, 5, 5) == 1.0);
    CHECK(green(path, 3, 5) == 0.0);
    CHECK(green(path, 5, 7) == 0.0);
}

TEST_CASE("constant AR(1) gives powers of phi") {
    auto path = constantPath({0.5});
    CHECK(green(path, 10, 7) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(green(path, 3, 0) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("determinant oracle equals the recursion on random paths") {
    std::mt19937_64 rng(20240811);
    for (int rep = 0; rep < 60; ++rep) {
        const int p = 1 + static_cast<int>(rng() % 4);
        const int q = static_cast<int>(rng() % 3);
        auto path = testutil::randomTablePath(rng, p, q, -5, 40);
        for (Index k = 1; k <= 12; ++k) {
            const Index s = 0;
            const Scalar a = green(path, s + k, s);
            const Scalar b = greenByDeterminant(path, s + k, s);
            CHECK(closeTo(a, b, 1e-9, 1e-9));
        }
    }
}

TEST_CASE("full lower Hessenberg case p >= k by hand") {
    std::mt19937_64 rng(99);
    auto path = testutil::randomTablePath(rng, 4, 0, -5, 30);
    const Index s = 2;
    const Scalar byHand = path.phi(1, s + 2) * path.phi(1, s + 1) + path.phi(2, s + 2);
    CHECK(green(path, s + 2, s) == doctest::Approx(byHand).epsilon(1e-12));
    CHECK(greenByDeterminant(path, s + 2, s) == doctest::Approx(byHand).epsilon(1e-12));
}

TEST_CASE("oracle horizon cap") {
    auto path = constantPath({0.5});
    CHECK_THROWS_AS(greenByDeterminant(path, 20, 0), std::invalid_argument);
}

namespace {

// closed form of the constant-coefficient Hessenbergian via characteristic
// roots (valid for distinct roots)
Scalar widomClosedForm(const std::vector<Scalar>& roots, Index k) {
    const int p = static_cast<int>(roots.size());
    Scalar acc = 0.0;
    for (int m = 0; m < p; ++m) {
        Scalar denom = 1.0;
        for (int n = 0; n < p; ++n)
            if (n != m) denom *= roots[m] - roots[n];
        acc += std::pow(roots[m], static_cast<Scalar>(k + p - 1)) / denom;
    }
    return acc;
}

}  // namespace

TEST_CASE("closed form via characteristic roots matches the recursion") {
    const std::vector<std::vector<Scalar>> rootSets = {
        {0.9, -0.5}, {0.7, 0.2}, {0.8, 0.5, -0.6}, {0.95, -0.3, 0.1}};
    for (const auto& roots : rootSets) {
        auto path = constantPath(testutil::arFromRoots(roots));
        for (Index k = 1; k <= 40; ++k) {
            const Scalar closed = widomClosedForm(roots, k);
            CHECK(std::abs(green(path, k, 0) - closed) <= 1e-10);
        }
    }
}

TEST_CASE("each table column solves the homogeneous equation") {
    std::mt19937_64 rng(5);
    auto path = testutil::randomTablePath(rng, 3, 0, -10, 40);
    GreenTable table(path, -10, 25);
    for (Index s : {-8, -1, 4}) {
        const auto& col = table.column(s);
        CHECK(col(0) == 1.0);
        for (Index t = s + 1; t <= 25; ++t) {
            Scalar rhs = 0.0;
            for (int m = 1; m <= path.p(); ++m)
                rhs += path.phi(m, t) * (t - m >= s ? col(t - m - s) : 0.0);
            CHECK(col(t - s) == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(table.xi(30, -12), std::out_of_range);
    CHECK(table.xi(7, 3) == doctest::Approx(green(path, 7, 3)).epsilon(1e-12));
}

TEST_CASE("row recursion agrees with the column recursion") {
    std::mt19937_64 rng(11);
    auto path = testutil::randomTablePath(rng, 4, 1, -30, 70);
    const Index t = 20;
    const Vector row = greenRowSpan(path, t, -10);
    for (Index u = -10; u <= t; ++u)
        CHECK(row(u + 10) == doctest::Approx(green(path, t, u)).epsilon(1e-11));
}

TEST_CASE("fundamental solutions") {
    std::mt19937_64 rng(13);
    auto path = testutil::randomTablePath(rng, 3, 1, -10, 50);

    SUBCASE("value at one step is the AR coefficient") {
        for (Index t : {3, 9, 17})
            for (int m = 1; m <= 3; ++m)
                CHECK(greenFundamental(path, m, t, t - 1) == path.phi(m, t));
    }
    SUBCASE("first fundamental solution is the principal one") {
        for (Index s : {-4, 0, 6})
            for (Index t = s - 2; t <= s + 12; ++t)
                CHECK(greenFundamental(path, 1, t, s) ==
                      doctest::Approx(green(path, t, s)).epsilon(1e-12));
    }
    SUBCASE("prescribed initial values") {
        const Index s = 4;
        for (int m = 1; m <= 3; ++m)
            for (int r = 1; r <= 3; ++r)
                CHECK(greenFundamental(path, m, s + 1 - r, s) == (r == m ? 1.0 : 0.0));
    }
    SUBCASE("lag bounds checked") {
        CHECK_THROWS_AS(greenFundamental(path, 4, 8, 2), std::out_of_range);
        CHECK_THROWS_AS(greenFundamental(path, 0, 8, 2), std::out_of_range);
    }
}

TEST_CASE("gegenbauer coefficients as Green functions") {
    const Scalar d = 0.3, phi = 0.7;
    auto path = gegenbauerPath(d, phi);
    CHECK(path.phi(1, 2) == doctest::Approx(phi * (d + 1.0)).epsilon(1e-14));
    CHECK(path.phi(2, 3) == doctest::Approx(-(2.0 * d + 1.0) / 3.0).epsilon(1e-14));

    SUBCASE("second fundamental solution collapses to -d xi(j,2)") {
        for (Index j : {3, 5, 12, 25})
            CHECK(greenFundamental(path, 2, j, 1) ==
                  doctest::Approx(-d * green(path, j, 2)).epsilon(1e-12));
    }
    SUBCASE("series coefficients match the defining second-order recursion") {
        std::vector<Scalar> c{1.0, 2.0 * phi * d};
        for (Index j = 2; j <= 40; ++j) {
            const Scalar cj = path.phi(1, j) * c[c.size() - 1] + path.phi(2, j) * c[c.size() - 2];
            c.push_back(cj);
            const Scalar viaGreen =
                green(path, j, 1) * 2.0 * phi * d + greenFundamental(path, 2, j, 1);
            CHECK(closeTo(viaGreen, cj, 1e-10, 1e-10));
        }
    }
}

TEST_CASE("periodic product form") {
    auto path = periodicArPath({0.9, 1.2, 0.5, 0.8});
    // one full cycle starting anywhere multiplies the seasonal coefficients
    CHECK(green(path, 4, 0) == doctest::Approx(0.432).epsilon(1e-12));
    Scalar prod = 0.9 * 1.2 * 0.5 * 0.8;
    for (int cycles : {2, 5, 10}) {
        const Index t = 4 * cycles;
        CHECK(green(path, t, 0) == doctest::Approx(std::pow(prod, cycles)).epsilon(1e-12));
    }
}

TEST_CASE("MA-augmented kernels") {
    SUBCASE("pure AR collapse") {
        std::mt19937_64 rng(3);
        auto path = testutil::randomTablePath(rng, 2, 0, -10, 40);
        for (Index r = -2; r <= 12; ++r)
            CHECK(impulseWeight(path, 10, r) == doctest::Approx(green(path, 10, r)));
        CHECK(pastInnovationWeight(path, 5, 10, 4) == 0.0);
    }
    SUBCASE("boundary values") {
        std::mt19937_64 rng(4);
        auto path = testutil::randomTablePath(rng, 2, 2, -10, 40);
        CHECK(impulseWeight(path, 9, 9) == 1.0);
        CHECK(impulseWeight(path, 9, 11) == 0.0);
        CHECK(pastInnovationWeight(path, 5, 10, 2) == 0.0);  // r < s+1-q
    }
    SUBCASE("constant ARMA(1,1) weights") {
        const Scalar phi = 0.6, theta = 0.3;
        auto path = constantPath({phi}, {theta});
        for (Index k = 1; k <= 8; ++k) {
            const Scalar expect = std::pow(phi, k) + std::pow(phi, k - 1) * theta;
            CHECK(impulseWeight(path, k, 0) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("one-step collapse recovers the model equation weights") {
        std::mt19937_64 rng(6);
        auto path = testutil::randomTablePath(rng, 2, 2, -10, 40);
        const Index t = 8, s = t - 1;
        for (int l = 1; l <= 2; ++l)
            CHECK(pastInnovationWeight(path, s, t, t - l) ==
                  doctest::Approx(path.theta(l, t)).epsilon(1e-12));
    }
}

TEST_CASE("MA-side Green function") {
    SUBCASE("constant MA(1) gives powers of -theta") {
        auto path = constantPath({}, {0.4});
        for (Index k = 0; k <= 6; ++k)
            CHECK(maGreen(path, k, 0) == doctest::Approx(std::pow(-0.4, k)).epsilon(1e-12));
    }
    SUBCASE("initial values and empty recursion") {
        std::mt19937_64 rng(8);
        auto path = testutil::randomTablePath(rng, 2, 0, -10, 30);
        CHECK(maGreen(path, 4, 4) == 1.0);
        CHECK(maGreen(path, 9, 4) == 0.0);  // q = 0
    }
    SUBCASE("structural mirror of the AR side") {
        std::mt19937_64 rng(9);
        auto path = testutil::randomTablePath(rng, 2, 3, -10, 40);
        auto mirror = maMirrorPath(path);
        for (Index k = 0; k <= 15; ++k)
            CHECK(maGreen(path, 5 + k, 5) ==
                  doctest::Approx(green(mirror, 5 + k, 5)).epsilon(1e-12));
        CHECK(maGreen(path, 12, 4) ==
              doctest::Approx(maGreenByDeterminant(path, 12, 4)).epsilon(1e-10));
    }
}

TEST_CASE("inversion weights") {
    SUBCASE("pure MA collapse and boundary") {
        auto path = constantPath({}, {0.4});
        for (Index k = 1; k <= 5; ++k)
            CHECK(inversionWeight(path, k, 0) == doctest::Approx(maGreen(path, k, 0)));
        CHECK(inversionWeight(path, 3, 3) == 1.0);
    }
    SUBCASE("constant ARMA(1,1) one step") {
        auto path = constantPath({0.6}, {0.3});
        CHECK(inversionWeight(path, 7, 6) == doctest::Approx(-0.3 - 0.6).epsilon(1e-12));
    }
}

TEST_CASE("streaming row matches the direct kernels") {
    std::mt19937_64 rng(17);
    auto path = testutil::randomTablePath(rng, 3, 2, -40, 80);
    const Index t = 25, s = 18;
    GreenRow ar(path, t);
    for (Index r = t; r >= 0; --r) {
        CHECK(ar.value() == doctest::Approx(green(path, t, r)).epsilon(1e-11));
        CHECK(ar.impulse() == doctest::Approx(impulseWeight(path, t, r)).epsilon(1e-11));
        if (r <= s)
            CHECK(ar.pastInnovation(s) ==
                  doctest::Approx(pastInnovationWeight(path, s, t, r)).epsilon(1e-11));
        if (r > 0) ar.advance();
    }
    GreenRow ma(path, t, GreenRow::Side::Ma);
    for (Index r = t; r >= 5; --r) {
        CHECK(ma.value() == doctest::Approx(maGreen(path, t, r)).epsilon(1e-11));
        CHECK(ma.inversion() == doctest::Approx(inversionWeight(path, t, r)).epsilon(1e-11));
        if (r > 5) ma.advance();
    }
}
