#ifndef TVARMA_COEFFICIENT_PATH_HPP
#define TVARMA_COEFFICIENT_PATH_HPP

#include <functional>
#include <optional>
#include <vector>

#include "tvarma/errors.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// Time-indexed model coefficients: AR lags phi(m,t), MA lags theta(l,t),
// drift(t) and noise variance sigma2(t), all defined over integer time.
// Data-backed paths may restrict the valid time window and throw outside it.
class CoefficientPath {
public:
    using LagFn = std::function<Scalar(int, Index)>;
    using TimeFn = std::function<Scalar(Index)>;

    CoefficientPath() = default;
    CoefficientPath(int p, int q, LagFn ar, LagFn ma, TimeFn drift, TimeFn noiseVar)
        : p_(p), q_(q), ar_(std::move(ar)), ma_(std::move(ma)),
          drift_(std::move(drift)), noiseVar_(std::move(noiseVar)) {
        if (p_ < 0 || q_ < 0) throw std::invalid_argument("orders must be non-negative");
    }

    int p() const { return p_; }
    int q() const { return q_; }

    Scalar phi(int m, Index t) const {
        if (m < 1 || m > p_) throw std::out_of_range("AR lag out of range");
        return ar_(m, t);
    }
    Scalar theta(int l, Index t) const {
        if (l < 1 || l > q_) throw std::out_of_range("MA lag out of range");
        return ma_(l, t);
    }
    Scalar drift(Index t) const { return drift_ ? drift_(t) : 0.0; }
    Scalar sigma2(Index t) const {
        const Scalar v = noiseVar_ ? noiseVar_(t) : 1.0;
        if (!(v > 0.0)) throw std::domain_error("sigma2 must be positive");
        return v;
    }

private:
    int p_ = 0;
    int q_ = 0;
    LagFn ar_;
    LagFn ma_;
    TimeFn drift_;
    TimeFn noiseVar_;
};

struct SegmentParams {
    Scalar drift = 0.0;
    std::vector<Scalar> ar;
    std::vector<Scalar> ma;
    Scalar sigma2 = 1.0;
};

CoefficientPath constantPath(std::vector<Scalar> ar, std::vector<Scalar> ma = {},
                             Scalar drift = 0.0, Scalar sigma2 = 1.0);

// AR(1) whose coefficient moves between phi1 and phi2 along the first-order
// logistic transition centred at tau with speed gamma.
CoefficientPath logisticArPath(Scalar phi1, Scalar phi2, Scalar gamma, Index tau,
                               Scalar drift = 0.0, Scalar sigma2 = 1.0);

// Times where the logistic transition has numerically saturated to within
// epsF of its plateaus (plateau values are exact only in the limit).
std::pair<Index, Index> logisticPlateauTimes(Scalar gamma, Index tau, Scalar epsF = 1e-12);

// Season t mod L picks the parameter set.
CoefficientPath periodicPath(std::vector<SegmentParams> seasons);
CoefficientPath periodicArPath(std::vector<Scalar> seasonPhis, Scalar drift = 0.0,
                               Scalar sigma2 = 1.0);

// Piecewise-constant path: segment i applies for breakTimes[i-1] < t <= breakTimes[i],
// the last segment for t > breakTimes.back().
CoefficientPath breakPath(std::vector<SegmentParams> segments, std::vector<Index> breakTimes);

// Order-2 path whose homogeneous solutions generate the coefficients of the
// power-series expansion of (1 - 2*phi*z + z^2)^(-d); defined for t >= 2.
CoefficientPath gegenbauerPath(Scalar d, Scalar phi);

// AR(1) coefficient phi for t <= 0, phi*lambda^(t/T) during the sample,
// phi*lambda afterwards.
CoefficientPath exponentialArPath(Scalar phi, Scalar lambda, Index sampleLength,
                                  Scalar drift = 0.0, Scalar sigma2 = 1.0);

// Explicit per-time table over [t0, t0 + rows - 1]; queries outside throw.
CoefficientPath tablePath(Index t0, Matrix arByTime, Matrix maByTime, Vector drift,
                          Vector sigma2);

// Swaps the AR and MA sides: p' = q, phi'_l(t) = -theta_l(t), q' = 0. The
// MA-side Green function of the original equals the AR-side one of the mirror.
CoefficientPath maMirrorPath(const CoefficientPath& path);

}  // namespace tvarma

#endif
