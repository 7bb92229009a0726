#ifndef TVARMA_INVERSION_HPP
#define TVARMA_INVERSION_HPP

#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/moments.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// Numerical probe of sum_r |theta(t,r)| convergence, the MA-side counterpart
// of the stability report.
struct InvertibilityReport {
    Index t = 0;
    std::vector<Index> probes;
    Vector thetaAtProbes;
    Scalar absSum = 0.0;
    bool converged = false;
    Scalar thetaDecay = 0.0;  // max |theta| over the last accepted window
    bool decayFlag = false;
    TailDiagnostics tail;
};

InvertibilityReport invertibilityReport(const CoefficientPath& path, Index t,
                                        const std::vector<Index>& probes,
                                        const TruncationPolicy& policy);

// A contiguous stretch of observations (values(i) is y at start + i).
struct Series {
    Index start = 0;
    Vector values;

    Index end() const { return start + values.size() - 1; }
    Scalar at(Index t) const { return values(t - start); }
};

struct RecoveredErrors {
    Index start = 0;  // first time with an acceptably small truncation bound
    Vector eps;
    Vector tailBound;  // per-time bound on the neglected remote-past terms
    Scalar decayEstimate = 0.0;
};

// eps_t = sum_{r<=t} theta_p(t,r) y_r - sum_{r<=t} theta(t,r) drift(r),
// truncated at the start of the observed history. Estimates are emitted only
// from the first time whose truncation bound clears the policy tolerance;
// shorter histories raise InsufficientHistoryError with a length estimate.
RecoveredErrors recoverErrors(const CoefficientPath& path, const Series& history,
                              const TruncationPolicy& policy);

}  // namespace tvarma

#endif
