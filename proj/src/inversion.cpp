#include "tvarma/inversion.hpp"

#include <algorithm>
#include <cmath>

#include "tvarma/green.hpp"
#include "tvarma/numeric.hpp"

namespace tvarma {

InvertibilityReport invertibilityReport(const CoefficientPath& path, Index t,
                                        const std::vector<Index>& probes,
                                        const TruncationPolicy& policy) {
    for (std::size_t i = 1; i < probes.size(); ++i)
        if (probes[i] >= probes[i - 1])
            throw std::invalid_argument("probes must be strictly decreasing");
    InvertibilityReport rep;
    rep.t = t;
    rep.probes = probes;
    rep.thetaAtProbes.setZero(static_cast<Index>(probes.size()));

    const Index probeFloor = probes.empty() ? t : probes.back();
    TailRule rule(policy);
    KahanSum absSum;
    GreenRow row(path, t, GreenRow::Side::Ma);
    std::size_t probeIdx = 0;
    bool done = false;
    TailRule::State state = TailRule::State::Scanning;
    for (;;) {
        const Scalar v = row.value();
        while (probeIdx < probes.size() && probes[probeIdx] == row.r())
            rep.thetaAtProbes(static_cast<Index>(probeIdx++)) = v;
        if (!done) {
            absSum.add(std::abs(v));
            state = rule.feed(std::abs(v));
            if (state != TailRule::State::Scanning) {
                done = true;
                rep.thetaDecay = rule.recentMax();
            }
        }
        rep.tail.rMin = row.r();
        if (done && row.r() <= probeFloor) break;
        row.advance();
    }
    rep.absSum = absSum.value();
    rep.converged = state == TailRule::State::Converged;
    rep.decayFlag = rep.thetaDecay <= policy.tailTol;
    rep.tail.termsUsed = rule.terms();
    rep.tail.converged = rep.converged;
    rep.tail.decayEstimate = rule.decayEstimate();
    return rep;
}

RecoveredErrors recoverErrors(const CoefficientPath& path, const Series& history,
                              const TruncationPolicy& policy) {
    policy.validate();
    if (history.values.size() == 0) throw InsufficientHistoryError("empty history", 1);
    const Index h0 = history.start;
    const Index hEnd = history.end();

    auto check = invertibilityReport(path, hEnd, {}, policy);
    if (!check.converged)
        throw NotInvertibleError("MA-side Green function is not absolutely summable");
    const Scalar rho = std::min(check.tail.decayEstimate, 1.0 - 1e-9);

    const Scalar yScale = std::max<Scalar>(1.0, history.values.cwiseAbs().maxCoeff());
    Scalar driftScale = 1.0;
    for (Index r = h0; r <= hEnd; ++r) driftScale = std::max(driftScale, std::abs(path.drift(r)));

    std::vector<Scalar> eps;
    std::vector<Scalar> bounds;
    Index firstGood = -1;
    for (Index t = h0; t <= hEnd; ++t) {
        KahanSum acc;
        GreenRow row(path, t, GreenRow::Side::Ma);
        for (;;) {
            const Index r = row.r();
            acc.add(row.inversion() * history.at(r));
            acc.add(-row.value() * path.drift(r));
            if (r == h0) break;
            row.advance();
        }
        // neglected weight mass: the first p+q below-edge weights exactly,
        // a geometric tail with the observed decay beyond them
        Scalar belowSum = 0.0, edge = 0.0;
        for (int j = 0; j < path.p() + path.q() + 1; ++j) {
            row.advance();
            edge = std::abs(row.value()) + std::abs(row.inversion());
            belowSum += edge;
        }
        const Scalar bound =
            (belowSum + edge * rho / (1.0 - rho)) * (yScale + driftScale);
        if (firstGood < 0 && bound <= policy.tailTol * yScale) firstGood = t;
        if (firstGood >= 0) {
            eps.push_back(acc.value());
            bounds.push_back(bound);
        }
    }
    if (firstGood < 0) {
        // length needed for the edge weights to decay below tolerance
        Index required = history.values.size() * 4;
        if (rho > 0.0 && rho < 1.0)
            required = static_cast<Index>(std::ceil(std::log(policy.tailTol * (1.0 - rho)) /
                                                    std::log(rho))) +
                       path.p() + path.q() + 1;
        throw InsufficientHistoryError("history too short for reliable innovation recovery",
                                       required);
    }
    RecoveredErrors out;
    out.start = firstGood;
    out.eps = Eigen::Map<Vector>(eps.data(), static_cast<Index>(eps.size()));
    out.tailBound = Eigen::Map<Vector>(bounds.data(), static_cast<Index>(bounds.size()));
    out.decayEstimate = rho;
    return out;
}

}  // namespace tvarma
