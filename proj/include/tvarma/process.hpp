#ifndef TVARMA_PROCESS_HPP
#define TVARMA_PROCESS_HPP

#include <cstdint>
#include <optional>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/green.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

enum class NoiseFamily { Gaussian, StudentT };

// Simulable model: coefficient path plus innovation family scaled to the
// path's sigma2(t) at every step.
struct TvArmaModel {
    CoefficientPath path;
    NoiseFamily noise = NoiseFamily::Gaussian;
    Scalar studentDf = 6.0;  // > 4 so fourth moments exist
    Index tMin = 0;
    Index tMax = 0;
};

struct SimulationRun {
    Index start = 0;  // time of y(0)
    Vector y;
    Vector eps;
    std::uint64_t seed = 0;
    Index burnIn = 0;

    Scalar yAt(Index t) const { return y(t - start); }
    Scalar epsAt(Index t) const { return eps(t - start); }
};

struct InitialValues {
    Vector y;    // y_s, y_{s-1}, ..., y_{s+1-p}
    Vector eps;  // eps_s, ..., eps_{s+1-q}
};

// Iterates the model equation forward over [tMin - burnIn, tMax] and keeps
// the [tMin, tMax] stretch. Initial values default to zeros at the burn-in
// start; the stored run satisfies the equation exactly.
SimulationRun simulate(const TvArmaModel& model, std::uint64_t seed,
                       const std::optional<InitialValues>& initial = std::nullopt,
                       Index burnIn = 500);

// Same iteration with caller-supplied innovations over [start, start+n-1].
SimulationRun simulateWithInnovations(const CoefficientPath& path, Index start,
                                      const Vector& innovations,
                                      const std::optional<InitialValues>& initial = std::nullopt);

// Explicit solution at time t conditioned at time s < t: homogeneous part from
// the p prescribed observations, drift part, and the two innovation parts.
// prescribedY = (y_s, ..., y_{s+1-p}), prescribedEps = (eps_s, ..., eps_{s+1-q}),
// futureEps = (eps_{s+1}, ..., eps_t).
Scalar represent(const CoefficientPath& path, Index t, Index s, const Vector& prescribedY,
                 const Vector& prescribedEps, const Vector& futureEps);

struct InnovationParts {
    Scalar unobservable = 0.0;  // weights xi_q on eps_{s+1..t}
    Scalar observable = 0.0;    // weights xi_{s,q} on eps_{s+1-q..s}
};

// Splits sum_r xi(t,r) u_r into the unobservable/observable innovation parts.
// eps spans [s+1-q, t] as (eps_{s+1-q}, ..., eps_t).
InnovationParts decomposeInnovations(const CoefficientPath& path, Index t, Index s,
                                     const Vector& eps);

// Product of companion matrices over r = s+1..t; entry (n+1, m) is the m-th
// fundamental solution at time t-n.
Matrix companionProduct(const CoefficientPath& path, Index t, Index s);

}  // namespace tvarma

#endif
