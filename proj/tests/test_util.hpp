#ifndef TVARMA_TEST_UTIL_HPP
#define TVARMA_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "tvarma/coefficient_path.hpp"

namespace tvarma::testutil {

// Deterministic time-varying path over a window, coefficients drawn uniformly
// and damped by lag so that horizons up to ~15 stay well-scaled.
inline CoefficientPath randomTablePath(std::mt19937_64& rng, int p, int q, Index t0,
                                       Index rows, Scalar arScale = 0.9,
                                       Scalar maScale = 0.8) {
    std::uniform_real_distribution<Scalar> unit(-1.0, 1.0);
    std::uniform_real_distribution<Scalar> pos(0.5, 1.5);
    Matrix ar(rows, p), ma(rows, q);
    Vector drift(rows), sigma2(rows);
    for (Index i = 0; i < rows; ++i) {
        for (int m = 0; m < p; ++m) ar(i, m) = arScale * unit(rng) / static_cast<Scalar>(m + 1);
        for (int l = 0; l < q; ++l) ma(i, l) = maScale * unit(rng) / static_cast<Scalar>(l + 1);
        drift(i) = unit(rng);
        sigma2(i) = pos(rng);
    }
    return tablePath(t0, std::move(ar), std::move(ma), std::move(drift), std::move(sigma2));
}

// AR coefficients with prescribed characteristic roots: product of (1 - root B).
inline std::vector<Scalar> arFromRoots(const std::vector<Scalar>& roots) {
    std::vector<Scalar> poly{1.0};  // coefficients of prod (1 - r B), lag ascending
    for (Scalar r : roots) {
        std::vector<Scalar> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= r * poly[i];
        }
        poly = next;
    }
    std::vector<Scalar> phi(poly.size() - 1);
    for (std::size_t m = 1; m < poly.size(); ++m) phi[m - 1] = -poly[m];
    return phi;
}

}  // namespace tvarma::testutil

#endif
