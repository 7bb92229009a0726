#include "tvarma/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "tvarma/green.hpp"
#include "tvarma/numeric.hpp"

namespace tvarma {

namespace {

constexpr Scalar kGaussian95 = 1.959963984540054;

// shared FE weights / MSE block of both predictors
void fillErrorTerms(const CoefficientPath& path, Index t, Index s, ForecastReport& rep) {
    rep.feWeights.resize(t - s);
    KahanSum mse;
    GreenRow row(path, t);
    for (Index r = t; r > s; --r) {
        while (row.r() > r) row.advance();
        const Scalar w = row.impulse();
        rep.feWeights(r - s - 1) = w;
        mse.add(w * w * path.sigma2(r));
    }
    rep.mse = mse.value();
    rep.gaussianBand = kGaussian95 * std::sqrt(rep.mse);
}

}  // namespace

ForecastReport predictFinite(const CoefficientPath& path, Index t, Index s,
                             const Vector& prescribedY, const Vector& prescribedEps) {
    if (s >= t) throw std::invalid_argument("forecast origin must precede t");
    const int p = path.p();
    const int q = path.q();
    if (prescribedY.size() < p || prescribedEps.size() < q)
        throw std::invalid_argument("prescribed values must cover the model orders");

    ForecastReport rep;
    rep.t = t;
    rep.s = s;
    KahanSum point;
    for (int m = 1; m <= p; ++m)
        point.add(greenFundamental(path, m, t, s) * prescribedY(m - 1));
    GreenRow row(path, t);
    for (Index r = t; r >= s + 1 - q; --r) {
        while (row.r() > r) row.advance();
        if (r > s)
            point.add(row.value() * path.drift(r));
        else
            point.add(row.pastInnovation(s) * prescribedEps(s - r));
    }
    rep.point = point.value();
    fillErrorTerms(path, t, s, rep);
    return rep;
}

ForecastReport predictInfinite(const CoefficientPath& path, Index t, Index s,
                               const Series& history, const TruncationPolicy& policy) {
    if (s >= t) throw std::invalid_argument("forecast origin must precede t");
    if (history.end() < s)
        throw InsufficientHistoryError("history must reach the forecast origin", s - history.end());

    if (path.q() == 0) {
        // innovations below s are exact functions of the observations, so the
        // projection collapses to the finite-history AR form
        if (history.start > s + 1 - path.p())
            throw InsufficientHistoryError("history must cover the last p observations",
                                           path.p());
        Vector lastY(path.p());
        for (int m = 0; m < path.p(); ++m) lastY(m) = history.at(s - m);
        ForecastReport rep = predictFinite(path, t, s, lastY, Vector());
        rep.truncation.converged = true;
        rep.truncation.rMin = s + 1 - path.p();
        return rep;
    }

    ForecastReport rep;
    rep.t = t;
    rep.s = s;

    // drift part: unconditional-mean style sum over the remote past
    const MomentResult driftPart = unconditionalMean(path, t, policy);

    KahanSum point;
    point.add(driftPart.value);
    rep.truncation = driftPart.tail;

    {
        RecoveredErrors rec;
        rec.start = s + 1;
        try {
            rec = recoverErrors(path, history, policy);
        } catch (const InsufficientHistoryError&) {
            rec.start = s + 1;  // nothing recoverable; the weight tail decides below
        }
        const Scalar yScale = std::max<Scalar>(1.0, history.values.cwiseAbs().maxCoeff());
        TailRule rule(policy);
        GreenRow row(path, t);
        while (row.r() > s) row.advance();
        TailRule::State st = TailRule::State::Scanning;
        Index terms = 0;
        while (row.r() >= rec.start && row.r() <= s) {
            const Scalar w = row.impulse();
            point.add(w * rec.eps(row.r() - rec.start));
            ++terms;
            st = rule.feed(std::abs(w));
            if (st == TailRule::State::Diverging)
                throw NonSummableError("predictor weights grow at the term cap");
            if (st != TailRule::State::Scanning) break;
            row.advance();
        }
        if (st != TailRule::State::Converged) {
            // probe the next stretch of weights to bound the neglected sum
            Scalar probeSum = 0.0, first = 0.0, last = 0.0;
            const int probeLen = 12;
            for (int j = 0; j < probeLen; ++j) {
                if (terms > 0 || j > 0) row.advance();
                last = std::abs(row.impulse());
                if (j == 0) first = last;
                probeSum += last;
            }
            Scalar rho = first > 0.0 ? std::pow(last / first, 1.0 / probeLen) : 0.0;
            rho = std::clamp(rho, 0.0, 1.0 - 1e-9);
            const Scalar bound = (probeSum + last * rho / (1.0 - rho)) * yScale;
            if (bound > policy.tailTol * yScale * 10.0) {
                Index required = 4 * history.values.size();
                if (rho > 0.0)
                    required = static_cast<Index>(std::ceil(
                                   std::log(policy.tailTol * (1.0 - rho)) / std::log(rho))) +
                               path.p() + path.q() + 1;
                throw InsufficientHistoryError(
                    "recovered innovations do not cover the truncated predictor sum", required);
            }
        }
        rep.truncation.termsUsed += terms;
        rep.truncation.converged = rep.truncation.converged;
        rep.truncation.rMin = std::min(rep.truncation.rMin, row.r());
    }
    rep.point = point.value();
    fillErrorTerms(path, t, s, rep);
    return rep;
}

MseComparison mseTimeComparison(const CoefficientPath& path, Index k, Index t1, Index t2,
                                Scalar tol) {
    if (k < 1) throw std::invalid_argument("horizon must be positive");
    auto mseAt = [&](Index t) {
        KahanSum acc;
        GreenRow row(path, t);
        for (Index r = t; r > t - k; --r) {
            while (row.r() > r) row.advance();
            const Scalar w = row.impulse();
            acc.add(w * w * path.sigma2(r));
        }
        return acc.value();
    };
    MseComparison cmp;
    cmp.mse1 = mseAt(t1);
    cmp.mse2 = mseAt(t2);
    cmp.equal = std::abs(cmp.mse1 - cmp.mse2) <= tol * std::max<Scalar>(1.0, std::abs(cmp.mse1));
    return cmp;
}

ForwardEfficiencyReport forwardEfficiency(const CoefficientPath& path, Index s,
                                          const std::vector<Index>& probes) {
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (probes[i] <= s) throw std::invalid_argument("probes must exceed the origin");
        if (i > 0 && probes[i] <= probes[i - 1])
            throw std::invalid_argument("probes must be strictly increasing");
    }
    ForwardEfficiencyReport rep;
    rep.s = s;
    rep.probes = probes;
    rep.fValues.setZero(static_cast<Index>(probes.size()));
    rep.mseValues.setZero(static_cast<Index>(probes.size()));
    for (std::size_t i = 0; i < probes.size(); ++i) {
        KahanSum f, mse;
        GreenRow row(path, probes[i]);
        for (Index r = probes[i]; r > s; --r) {
            while (row.r() > r) row.advance();
            f.add(std::abs(row.value()));
            const Scalar w = row.impulse();
            mse.add(w * w * path.sigma2(r));
        }
        rep.fValues(static_cast<Index>(i)) = f.value();
        rep.mseValues(static_cast<Index>(i)) = mse.value();
    }
    const Index n = rep.fValues.size();
    if (n >= 4) {
        const Index half = n / 2;
        const Scalar firstMax = rep.fValues.head(half).maxCoeff();
        const Scalar tailMax = rep.fValues.tail(n - half).maxCoeff();
        rep.bounded = tailMax <= firstMax * 1.02 + 1e-12;
        rep.fLimitEstimate = tailMax;
        rep.oscillationEstimate =
            rep.mseValues.tail(n - half).maxCoeff() - rep.mseValues.tail(n - half).minCoeff();
    } else if (n > 0) {
        rep.fLimitEstimate = rep.fValues.maxCoeff();
    }
    return rep;
}

}  // namespace tvarma
