#ifndef TVARMA_FORECAST_HPP
#define TVARMA_FORECAST_HPP

#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/inversion.hpp"
#include "tvarma/moments.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

struct ForecastReport {
    Index t = 0;
    Index s = 0;
    Scalar point = 0.0;
    Scalar mse = 0.0;
    Vector feWeights;          // xi_q(t,r) for r = s+1..t
    Scalar gaussianBand = 0.0;  // 1.96 * sqrt(mse), convenience for intervals
    TailDiagnostics truncation;
};

// Optimal k-step predictor from the finite conditioning set: the p prescribed
// observations and q prescribed innovations at s.
// prescribedY = (y_s, ..., y_{s+1-p}), prescribedEps = (eps_s, ..., eps_{s+1-q}).
ForecastReport predictFinite(const CoefficientPath& path, Index t, Index s,
                             const Vector& prescribedY, const Vector& prescribedEps);

// Optimal predictor on the full observed history: innovations are recovered
// by inversion and the remote-past sums truncated per policy. The forecast
// error and MSE coincide with the finite-history form.
ForecastReport predictInfinite(const CoefficientPath& path, Index t, Index s,
                               const Series& history, const TruncationPolicy& policy);

struct MseComparison {
    Scalar mse1 = 0.0;
    Scalar mse2 = 0.0;
    bool equal = false;
};

// Equal-horizon MSEs at two forecast times; equal only in special cases such
// as constant coefficients.
MseComparison mseTimeComparison(const CoefficientPath& path, Index k, Index t1, Index t2,
                                Scalar tol = 1e-9);

// Forward-efficiency diagnostics with origin s: growth of the absolute
// partial sums F(t,s) and of the MSE as t runs over the probes. The
// oscillation value is a finite-probe estimate of sup - inf over the tail.
struct ForwardEfficiencyReport {
    Index s = 0;
    std::vector<Index> probes;  // increasing forecast times
    Vector fValues;             // F(t,s) = sum_{r=s+1..t} |xi(t,r)|
    Vector mseValues;
    bool bounded = false;
    Scalar fLimitEstimate = 0.0;
    Scalar oscillationEstimate = 0.0;
};

ForwardEfficiencyReport forwardEfficiency(const CoefficientPath& path, Index s,
                                          const std::vector<Index>& probes);

}  // namespace tvarma

#endif
