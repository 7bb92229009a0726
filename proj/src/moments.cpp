#include "tvarma/moments.hpp"

#include <algorithm>
#include <cmath>

#include "tvarma/numeric.hpp"

namespace tvarma {

TailRule::TailRule(const TruncationPolicy& policy) : policy_(policy) {
    policy_.validate();
    ring_.assign(window, 0.0);
}

Scalar TailRule::recentMax() const {
    const Index have = std::min<Index>(fed_, window);
    Scalar m = 0.0;
    for (Index i = 0; i < have; ++i) m = std::max(m, ring_[static_cast<std::size_t>(i)]);
    return m;
}

TailRule::State TailRule::feed(Scalar absTerm) {
    if (!std::isfinite(absTerm) || absTerm > 1e100) return State::Diverging;
    ring_[static_cast<std::size_t>(fed_ % window)] = absTerm;
    ++fed_;
    curWindowMax_ = std::max(curWindowMax_, absTerm);
    if (fed_ % window == 0) {
        if (prevWindowMax_ >= 0.0) {
            decay_ = prevWindowMax_ > 0.0
                         ? std::pow(curWindowMax_ / prevWindowMax_, 1.0 / window)
                         : 0.0;
            decay_ = std::clamp(decay_, 0.0, 1.0 - 1e-9);
        }
        prevWindowMax_ = curWindowMax_;
        curWindowMax_ = 0.0;
    }
    if (fed_ >= window && recentMax() < policy_.tailTol * (1.0 - decay_))
        return State::Converged;
    if (fed_ >= policy_.maxTerms) {
        const Scalar recent = std::max(curWindowMax_, recentMax());
        // before the first full window ring_[0] still holds the first term
        const Scalar baseline = prevWindowMax_ >= 0.0 ? prevWindowMax_ : ring_[0];
        return recent >= baseline ? State::Diverging : State::Exhausted;
    }
    return State::Scanning;
}

namespace {

struct ScanResult {
    TailDiagnostics tail;
    TailRule::State finalState = TailRule::State::Scanning;
};

// Walks one Green row from r = t toward the remote past, feeding |term(row)|
// into the tail rule and letting the visitor accumulate.
template <typename TermFn, typename VisitFn>
ScanResult scanRow(const CoefficientPath& path, Index t, const TruncationPolicy& policy,
                   bool throwOnDiverge, TermFn termMagnitude, VisitFn visit) {
    TailRule rule(policy);
    GreenRow row(path, t);
    ScanResult res;
    for (;;) {
        const Scalar mag = termMagnitude(row);
        visit(row);
        const TailRule::State st = rule.feed(mag);
        res.tail.rMin = row.r();
        if (st == TailRule::State::Diverging && throwOnDiverge)
            throw NonSummableError("partial sums still growing at the term cap");
        if (st != TailRule::State::Scanning) {
            res.finalState = st;
            res.tail.converged = st == TailRule::State::Converged;
            break;
        }
        row.advance();
    }
    res.tail.termsUsed = rule.terms();
    res.tail.decayEstimate = rule.decayEstimate();
    return res;
}

}  // namespace

WoldWeights woldWeights(const CoefficientPath& path, Index t, const TruncationPolicy& policy) {
    std::vector<Scalar> w;
    auto res = scanRow(
        path, t, policy, true, [](const GreenRow& r) { return std::abs(r.impulse()); },
        [&](const GreenRow& r) { w.push_back(r.impulse()); });
    WoldWeights out;
    out.t = t;
    out.weights = Eigen::Map<Vector>(w.data(), static_cast<Index>(w.size()));
    out.tail = res.tail;
    return out;
}

MomentResult unconditionalMean(const CoefficientPath& path, Index t,
                               const TruncationPolicy& policy) {
    KahanSum sum;
    auto res = scanRow(
        path, t, policy, true,
        [&](const GreenRow& r) { return std::abs(r.value() * path.drift(r.r())); },
        [&](const GreenRow& r) { sum.add(r.value() * path.drift(r.r())); });
    return {sum.value(), res.tail};
}

MomentResult unconditionalVariance(const CoefficientPath& path, Index t,
                                   const TruncationPolicy& policy) {
    KahanSum sum;
    auto term = [&](const GreenRow& r) {
        const Scalar w = r.impulse();
        return w * w * path.sigma2(r.r());
    };
    auto res = scanRow(path, t, policy, true, term, [&](const GreenRow& r) { sum.add(term(r)); });
    return {sum.value(), res.tail};
}

MomentResult autocovariance(const CoefficientPath& path, Index t, Index lag,
                            const TruncationPolicy& policy) {
    if (lag < 0) throw std::invalid_argument("lag must be non-negative");
    if (lag == 0) return unconditionalVariance(path, t, policy);
    policy.validate();
    // two synchronized rows; terms vanish identically above r = t - lag
    GreenRow rowT(path, t);
    GreenRow rowL(path, t - lag);
    while (rowT.r() > t - lag) rowT.advance();
    TailRule rule(policy);
    KahanSum sum;
    TailDiagnostics tail;
    for (;;) {
        const Scalar term = rowT.impulse() * rowL.impulse() * path.sigma2(rowT.r());
        sum.add(term);
        const TailRule::State st = rule.feed(std::abs(term));
        tail.rMin = rowT.r();
        if (st == TailRule::State::Diverging)
            throw NonSummableError("autocovariance partial sums still growing at the term cap");
        if (st != TailRule::State::Scanning) {
            tail.converged = st == TailRule::State::Converged;
            break;
        }
        rowT.advance();
        rowL.advance();
    }
    tail.termsUsed = rule.terms();
    tail.decayEstimate = rule.decayEstimate();
    return {sum.value(), tail};
}

StabilityReport stabilityReport(const CoefficientPath& path, Index t,
                                const std::vector<Index>& probes,
                                const TruncationPolicy& policy) {
    for (std::size_t i = 1; i < probes.size(); ++i)
        if (probes[i] >= probes[i - 1])
            throw std::invalid_argument("probes must be strictly decreasing");
    StabilityReport rep;
    rep.t = t;
    rep.probes = probes;
    rep.xiAtProbes.setZero(static_cast<Index>(probes.size()));
    rep.driftTermAtProbes.setZero(static_cast<Index>(probes.size()));
    rep.sqTermAtProbes.setZero(static_cast<Index>(probes.size()));

    const Index probeFloor = probes.empty() ? t : probes.back();
    TailRule absRule(policy), sqRule(policy);
    bool absDone = false, sqDone = false;
    KahanSum absSum, sqSum;
    Scalar xiDecay = 0.0;
    GreenRow row(path, t);
    std::size_t probeIdx = 0;
    TailRule::State absState = TailRule::State::Scanning;
    TailRule::State sqState = TailRule::State::Scanning;
    for (;;) {
        const Scalar xi = row.value();
        const Scalar w = row.impulse();
        const Scalar sqTerm = w * w * path.sigma2(row.r());
        while (probeIdx < probes.size() && probes[probeIdx] == row.r()) {
            rep.xiAtProbes(static_cast<Index>(probeIdx)) = xi;
            rep.driftTermAtProbes(static_cast<Index>(probeIdx)) = xi * path.drift(row.r());
            rep.sqTermAtProbes(static_cast<Index>(probeIdx)) = sqTerm;
            ++probeIdx;
        }
        if (!absDone) {
            absSum.add(std::abs(xi));
            absState = absRule.feed(std::abs(xi));
            if (absState != TailRule::State::Scanning) {
                absDone = true;
                xiDecay = absRule.recentMax();
            }
        }
        if (!sqDone) {
            sqSum.add(sqTerm);
            sqState = sqRule.feed(std::abs(sqTerm));
            if (sqState != TailRule::State::Scanning) sqDone = true;
        }
        if (absDone && sqDone && row.r() <= probeFloor) break;
        rep.tail.rMin = row.r();
        row.advance();
    }
    rep.absSum = absSum.value();
    rep.absSumConverged = absState == TailRule::State::Converged;
    rep.sqSum = sqSum.value();
    rep.sqSumConverged = sqState == TailRule::State::Converged;
    rep.tail.termsUsed = absRule.terms();
    rep.tail.converged = rep.absSumConverged;
    rep.tail.decayEstimate = absRule.decayEstimate();
    rep.xiDecay = xiDecay;
    rep.decayFlag = rep.xiDecay <= policy.tailTol;

    // numerical reading of the implication arrows on the partial data
    bool consistent = true;
    if (rep.absSumConverged) {
        consistent = rep.decayFlag && rep.sqSumConverged;
        if (!rep.probes.empty()) {
            const Index last = static_cast<Index>(rep.probes.size()) - 1;
            const Scalar scale = std::max<Scalar>(1.0, rep.xiAtProbes.cwiseAbs().maxCoeff());
            consistent = consistent &&
                         std::abs(rep.xiAtProbes(last)) <= scale &&
                         std::isfinite(rep.driftTermAtProbes(last)) &&
                         std::isfinite(rep.sqTermAtProbes(last));
        }
    }
    rep.diagramConsistent = consistent;
    return rep;
}

}  // namespace tvarma
