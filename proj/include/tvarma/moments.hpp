#ifndef TVARMA_MOMENTS_HPP
#define TVARMA_MOMENTS_HPP

#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/errors.hpp"
#include "tvarma/green.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// The remote-past sums run to -infinity on paper; these bounds decide where
// a numerically negligible tail is cut.
struct TruncationPolicy {
    Scalar tailTol = 1e-10;
    Index maxTerms = 100000;

    void validate() const {
        if (!(tailTol > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
        if (maxTerms < 1) throw std::invalid_argument("max terms must be at least 1");
    }
};

// Stop rule shared by the truncated sums: halt once the last `window` term
// magnitudes all fall below tailTol * (1 - rho), rho being the observed
// geometric decay. Growth at the term cap is the non-summable signal.
class TailRule {
public:
    static constexpr int window = 50;
    enum class State { Scanning, Converged, Exhausted, Diverging };

    explicit TailRule(const TruncationPolicy& policy);
    State feed(Scalar absTerm);

    Index terms() const { return fed_; }
    Scalar decayEstimate() const { return decay_; }
    // largest magnitude among the most recent window of terms
    Scalar recentMax() const;

private:
    TruncationPolicy policy_;
    std::vector<Scalar> ring_;
    Index fed_ = 0;
    Scalar decay_ = 0.0;
    Scalar prevWindowMax_ = -1.0;
    Scalar curWindowMax_ = 0.0;
};

struct TailDiagnostics {
    Index termsUsed = 0;
    bool converged = false;
    Scalar decayEstimate = 0.0;
    Index rMin = 0;  // most remote time index included
};

struct WoldWeights {
    Index t = 0;
    // weights(i) multiplies the innovation at time t - i
    Vector weights;
    TailDiagnostics tail;
};

// Wold decomposition weights xi_q(t, r) for r = t downward until the tail rule
// fires. Throws NonSummableError when the cap is hit on growing terms.
WoldWeights woldWeights(const CoefficientPath& path, Index t, const TruncationPolicy& policy);

struct MomentResult {
    Scalar value = 0.0;
    TailDiagnostics tail;
};

// sum_{r<=t} xi(t,r) drift(r)
MomentResult unconditionalMean(const CoefficientPath& path, Index t,
                               const TruncationPolicy& policy);

// sum_{r<=t} xi_q(t,r)^2 sigma2(r)
MomentResult unconditionalVariance(const CoefficientPath& path, Index t,
                                   const TruncationPolicy& policy);

// sum_{r<=t-lag} xi_q(t,r) xi_q(t-lag,r) sigma2(r)
MomentResult autocovariance(const CoefficientPath& path, Index t, Index lag,
                            const TruncationPolicy& policy);

// Numerical probes of the stability conditions and the implications tying
// absolute summability, Green-function decay and the second-moment sums
// together. Reports partial-sum behaviour only; divergence is a flag here.
struct StabilityReport {
    Index t = 0;
    std::vector<Index> probes;
    Vector xiAtProbes;
    Vector driftTermAtProbes;  // xi(t,s) drift(s)
    Vector sqTermAtProbes;     // xi_q(t,s)^2 sigma2(s)
    Scalar xiDecay = 0.0;      // max |xi| over the last accepted window
    bool decayFlag = false;
    Scalar absSum = 0.0;
    bool absSumConverged = false;
    Scalar sqSum = 0.0;
    bool sqSumConverged = false;
    TailDiagnostics tail;
    bool diagramConsistent = false;
};

StabilityReport stabilityReport(const CoefficientPath& path, Index t,
                                const std::vector<Index>& probes,
                                const TruncationPolicy& policy);

}  // namespace tvarma

#endif
