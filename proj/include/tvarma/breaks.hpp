#ifndef TVARMA_BREAKS_HPP
#define TVARMA_BREAKS_HPP

#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/inversion.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

struct ArSegment {
    Index firstTime = 0;  // first dependent observation time
    Index lastTime = 0;
    Scalar drift = 0.0;
    Vector ar;
    Scalar sigma2 = 1.0;  // residual variance, SSR / (n - p - 1)
    Vector se;            // standard errors of (drift, ar...)
    Index nObs = 0;
    Scalar ssr = 0.0;
};

struct SegmentedAR {
    int p = 0;
    std::vector<Index> breakTimes;  // last time of each non-final segment
    std::vector<ArSegment> segments;
    Scalar ssr = 0.0;
};

struct SegmentationResult {
    std::vector<SegmentedAR> byBreakCount;  // index = number of breaks
    std::vector<Scalar> bic;
    int selected = 0;
};

// Segment cost driving the partition search. The Gaussian-likelihood cost
// n_i log(SSR_i / n_i) rewards coinciding variance breaks; the plain
// least-squares cost minimizes total SSR.
enum class SegmentCost { GaussianLikelihood, LeastSquares };

// AR(p) segmentation: for each break count up to maxBreaks the globally
// cost-minimal partition by dynamic programming over segment OLS costs, ties
// resolved toward the earliest break indices. Selection across break counts
// by BIC with per-segment variances. minSeg < 0 picks the default
// max(p+2, T/10).
SegmentationResult fitSegmentedAr(const Series& y, int p, int maxBreaks, Index minSeg = -1,
                                  SegmentCost cost = SegmentCost::GaussianLikelihood);

// Exhaustive-enumeration twin of the least-squares DP, used as its
// correctness oracle.
Scalar exhaustiveBestSsr(const Series& y, int p, int breaks, Index minSeg = -1);

struct DabarVariance {
    Scalar var = 0.0;
    Scalar a = 0.0;  // weight on the latest-regime innovation variance
    Scalar b = 0.0;  // weight on the middle-regime innovation variance
    Scalar c = 0.0;  // stationary-seed weight on the earliest-regime variance
};

// Variance of the two-break AR(2) process l steps after the later break time.
// segments run in time order (earliest first); breaks at times t2 < t1.
// Requires the outer segments to be stationary.
DabarVariance dabarVariance(const std::vector<SegmentParams>& segments, Index t2, Index t1,
                            Index l);

struct SegmentMeasures {
    Scalar largestRoot = 0.0;  // modulus of the largest inverse AR root
    Scalar coeffSum = 0.0;
    Scalar cumulativeImpact = 0.0;  // 1 / (1 - sum)
    Scalar mean = 0.0;              // drift / (1 - sum)
    Scalar spectrumAtZero = 0.0;    // sigma2 / (2 pi (1 - sum)^2)
    Scalar variance = 0.0;
    Scalar shockPersistence = 0.0;  // variance / sigma2
    bool stationary = false;
};

struct PersistenceReport {
    std::vector<SegmentMeasures> segments;
    bool hasTrajectories = false;
    Index t1 = 0;
    Index t2 = 0;
    std::vector<Index> trajectoryTimes;  // t1 + l
    Vector varianceTrajectory;
    Vector persistenceTrajectory;
};

// Per-segment persistence measures; for the two-break order-2 fit the
// time-varying variance and shock-persistence trajectories are included up to
// the requested number of steps past the later break.
PersistenceReport persistenceMeasures(const SegmentedAR& fit, Index trajectorySteps = 40);

struct ForecastMetrics {
    Scalar rmse = 0.0;
    Scalar mae = 0.0;
    Scalar theilU = 0.0;  // rmse / (sqrt(mean actual^2) + sqrt(mean pred^2))
};

ForecastMetrics forecastMetrics(const Vector& actual, const Vector& predicted);

}  // namespace tvarma

#endif
