#include "tvarma/breaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tvarma/errors.hpp"
#include "tvarma/green.hpp"
#include "tvarma/stochastic_moments.hpp"

namespace tvarma {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

// Per-segment OLS machinery over dependent observations j = 0..n-1, where
// dependent j sits at series position p + j and regresses on a constant and
// the p preceding values (which may cross a neighbouring segment).
class SegmentCosts {
public:
    SegmentCosts(const Series& y, int p, Index minSeg, SegmentCost mode)
        : p_(p), minSeg_(minSeg), n_(y.values.size() - p) {
        if (n_ < minSeg_) throw DataError("series too short for one segment");
        const int d = p + 1;
        cost_ = Matrix::Constant(n_, n_, kInf);
        x_.resize(n_, d);
        yv_.resize(n_);
        for (Index j = 0; j < n_; ++j) {
            x_(j, 0) = 1.0;
            for (int m = 1; m <= p; ++m) x_(j, m) = y.values(p + j - m);
            yv_(j) = y.values(p + j);
        }
        for (Index a = 0; a < n_; ++a) {
            Matrix xtx = Matrix::Zero(d, d);
            Vector xty = Vector::Zero(d);
            Scalar yty = 0.0;
            for (Index b = a; b < n_; ++b) {
                const auto row = x_.row(b);
                xtx.noalias() += row.transpose() * row;
                xty.noalias() += row.transpose() * yv_(b);
                yty += yv_(b) * yv_(b);
                if (b - a + 1 < minSeg_) continue;
                Eigen::FullPivLU<Matrix> lu(xtx);
                lu.setThreshold(1e-10);
                if (lu.rank() < d) continue;  // rank-deficient stretch stays infeasible
                const Vector beta = lu.solve(xty);
                const Scalar ssr = std::max(yty - beta.dot(xty), 0.0);
                const Scalar len = static_cast<Scalar>(b - a + 1);
                cost_(a, b) = mode == SegmentCost::LeastSquares
                                  ? ssr
                                  : len * std::log(std::max(ssr / len, 1e-300));
            }
        }
    }

    Index n() const { return n_; }
    Scalar cost(Index a, Index b) const { return cost_(a, b); }

    ArSegment fit(const Series& y, Index a, Index b) const {
        const int d = p_ + 1;
        Matrix xtx = Matrix::Zero(d, d);
        Vector xty = Vector::Zero(d);
        Scalar yty = 0.0;
        for (Index j = a; j <= b; ++j) {
            const auto row = x_.row(j);
            xtx.noalias() += row.transpose() * row;
            xty.noalias() += row.transpose() * yv_(j);
            yty += yv_(j) * yv_(j);
        }
        Eigen::FullPivLU<Matrix> lu(xtx);
        lu.setThreshold(1e-10);
        if (lu.rank() < d) throw DataError("rank-deficient segment regression");
        const Vector beta = lu.solve(xty);
        ArSegment seg;
        seg.firstTime = y.start + p_ + a;
        seg.lastTime = y.start + p_ + b;
        seg.nObs = b - a + 1;
        seg.drift = beta(0);
        seg.ar = beta.tail(p_);
        seg.ssr = std::max(yty - beta.dot(xty), 0.0);
        const Index dof = seg.nObs - d;
        seg.sigma2 = dof > 0 ? seg.ssr / static_cast<Scalar>(dof) : kInf;
        const Matrix xtxInv = lu.inverse();
        seg.se.resize(d);
        for (int j = 0; j < d; ++j) seg.se(j) = std::sqrt(seg.sigma2 * xtxInv(j, j));
        return seg;
    }

private:
    int p_;
    Index minSeg_;
    Index n_;
    Matrix cost_;
    Matrix x_;
    Vector yv_;
};

Index defaultMinSeg(Index totalLength, int p, Index minSeg) {
    if (minSeg > 0) return std::max<Index>(minSeg, p + 2);
    return std::max<Index>(p + 2, totalLength / 10);
}

}  // namespace

SegmentationResult fitSegmentedAr(const Series& y, int p, int maxBreaks, Index minSeg,
                                  SegmentCost cost) {
    if (p < 1) throw std::invalid_argument("AR order must be >= 1");
    if (maxBreaks < 0) throw std::invalid_argument("maxBreaks must be >= 0");
    minSeg = defaultMinSeg(y.values.size(), p, minSeg);
    if (y.values.size() < p + (maxBreaks + 1) * minSeg)
        throw DataError("series too short for the requested number of breaks");

    SegmentCosts costs(y, p, minSeg, cost);
    const Index n = costs.n();

    // best(l, j): minimal SSR of splitting dependent [0..j] into l+1 segments
    Matrix best = Matrix::Constant(maxBreaks + 1, n, kInf);
    Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> split(maxBreaks + 1, n);
    split.setConstant(-1);
    for (Index j = 0; j < n; ++j) best(0, j) = costs.cost(0, j);
    for (int l = 1; l <= maxBreaks; ++l) {
        for (Index j = 0; j < n; ++j) {
            // last segment is [u+1 .. j]; earliest split wins ties
            for (Index u = 0; u + 1 <= j; ++u) {
                if (best(l - 1, u) == kInf) continue;
                if (j - u < minSeg) break;
                const Scalar v = best(l - 1, u) + costs.cost(u + 1, j);
                if (v < best(l, j)) {
                    best(l, j) = v;
                    split(l, j) = u;
                }
            }
        }
    }

    SegmentationResult result;
    const Scalar nS = static_cast<Scalar>(n);
    for (int l = 0; l <= maxBreaks; ++l) {
        if (best(l, n - 1) == kInf)
            throw DataError("no feasible partition for the requested break count");
        std::vector<Index> bounds;  // dependent index of each segment end
        bounds.push_back(n - 1);
        for (int lev = l; lev >= 1;) {
            const Index u = split(lev, bounds.back());
            if (u < 0) throw DataError("no feasible partition for the requested break count");
            bounds.push_back(u);
            --lev;
        }
        std::sort(bounds.begin(), bounds.end());

        SegmentedAR fit;
        fit.p = p;
        fit.ssr = cost == SegmentCost::LeastSquares ? best(l, n - 1) : 0.0;
        Index a = 0;
        Scalar bicAcc = 0.0;
        for (Index b : bounds) {
            ArSegment seg = costs.fit(y, a, b);
            bicAcc += static_cast<Scalar>(seg.nObs) *
                      std::log(std::max(seg.ssr / static_cast<Scalar>(seg.nObs), 1e-300));
            if (cost != SegmentCost::LeastSquares) fit.ssr += seg.ssr;
            if (b != n - 1) fit.breakTimes.push_back(seg.lastTime);
            fit.segments.push_back(std::move(seg));
            a = b + 1;
        }
        const Scalar k = static_cast<Scalar>((l + 1) * (p + 2) + l);
        result.bic.push_back(bicAcc + k * std::log(nS));
        result.byBreakCount.push_back(std::move(fit));
    }
    result.selected = static_cast<int>(
        std::min_element(result.bic.begin(), result.bic.end()) - result.bic.begin());
    return result;
}

Scalar exhaustiveBestSsr(const Series& y, int p, int breaks, Index minSeg) {
    minSeg = defaultMinSeg(y.values.size(), p, minSeg);
    SegmentCosts costs(y, p, minSeg, SegmentCost::LeastSquares);
    const Index n = costs.n();
    Scalar bestSsr = kInf;
    if (breaks == 0) return costs.cost(0, n - 1);
    std::vector<Index> cut(static_cast<std::size_t>(breaks));
    // enumerate cut positions (dependent index of each segment end), summing
    // segment costs left to right
    std::function<void(int, Index, Scalar)> rec = [&](int level, Index start, Scalar acc) {
        if (level == breaks) {
            if (n - start >= minSeg) bestSsr = std::min(bestSsr, acc + costs.cost(start, n - 1));
            return;
        }
        for (Index end = start + minSeg - 1; end + 1 < n; ++end) {
            const Scalar c = costs.cost(start, end);
            if (c == kInf) continue;
            rec(level + 1, end + 1, acc + c);
        }
    };
    rec(0, 0, 0.0);
    return bestSsr;
}

DabarVariance dabarVariance(const std::vector<SegmentParams>& segments, Index t2, Index t1,
                            Index l) {
    if (segments.size() != 3) throw std::invalid_argument("need exactly three segments");
    if (t2 > t1) throw std::invalid_argument("break times must satisfy t2 <= t1");
    if (l < 0) throw std::invalid_argument("l must be non-negative");
    for (const auto& s : segments)
        if (s.ar.size() != 2) throw std::invalid_argument("segments must be order 2");

    auto stationaryAr2 = [](const SegmentParams& s) {
        const Scalar phi1 = s.ar[0], phi2 = s.ar[1];
        return std::abs(phi2) < 1.0 && phi2 + phi1 < 1.0 && phi2 - phi1 < 1.0;
    };
    if (!stationaryAr2(segments.front()) || !stationaryAr2(segments.back()))
        throw ConditionViolatedError("outer regimes must be second-order stationary");

    std::vector<Index> breaks{t2, t1};
    if (t2 == t1) {
        // one-break reading: the middle regime is empty
        breaks = {t1};
    }
    std::vector<SegmentParams> segs = segments;
    if (t2 == t1) segs.erase(segs.begin() + 1);
    auto path = breakPath(segs, breaks);

    const Index t = t1 + l;
    DabarVariance out;
    const Vector row = greenRowSpan(path, t, t2 + 1);
    auto xiAt = [&](Index u) -> Scalar {
        if (u > t) return 0.0;
        if (u == t) return 1.0;
        return row(u - (t2 + 1));
    };
    for (Index r = 1; r <= l; ++r) out.a += xiAt(t1 + r) * xiAt(t1 + r);
    for (Index r = 0; r <= t1 - t2 - 1; ++r) out.b += xiAt(t1 - r) * xiAt(t1 - r);

    const Scalar xiT2 = green(path, t, t2);
    const Scalar fund2 = greenFundamental(path, 2, t, t2);
    const Scalar phi13 = segments.front().ar[0];
    const Scalar phi23 = segments.front().ar[1];
    const Scalar denom = (1.0 + phi23) * ((1.0 - phi23) * (1.0 - phi23) - phi13 * phi13);
    out.c = ((1.0 - phi23) * (xiT2 * xiT2 + fund2 * fund2) +
             2.0 * phi13 * xiT2 * fund2) /
            denom;

    const Scalar s1 = segments[2].sigma2;  // latest regime
    const Scalar s2 = segments[1].sigma2;
    const Scalar s3 = segments[0].sigma2;  // earliest regime
    out.var = out.a * s1 + out.b * s2 + out.c * s3;
    return out;
}

namespace {

SegmentMeasures measuresFor(const ArSegment& seg, int p) {
    SegmentMeasures m;
    m.coeffSum = seg.ar.sum();
    Matrix comp = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j) comp(0, j) = seg.ar(j);
    for (int i = 1; i < p; ++i) comp(i, i - 1) = 1.0;
    m.largestRoot = spectralRadius(comp);
    m.stationary = m.largestRoot < 1.0;
    const Scalar oneMinus = 1.0 - m.coeffSum;
    m.cumulativeImpact = 1.0 / oneMinus;
    m.mean = seg.drift / oneMinus;
    m.spectrumAtZero = seg.sigma2 / (2.0 * std::numbers::pi_v<Scalar> * oneMinus * oneMinus);
    if (m.stationary) {
        GrcMomentInputs in;
        in.p = p;
        in.mean.resize(p + 1);
        in.mean(0) = seg.drift;
        in.mean.tail(p) = seg.ar;
        in.cov = Matrix::Zero(p + 1, p + 1);
        in.crossEps = Vector::Zero(p + 1);
        in.noiseVar = seg.sigma2;
        m.variance = grcAutocov(in, 0)(0);
        m.shockPersistence = m.variance / seg.sigma2;
    } else {
        m.variance = std::numeric_limits<Scalar>::quiet_NaN();
        m.shockPersistence = std::numeric_limits<Scalar>::quiet_NaN();
    }
    return m;
}

}  // namespace

PersistenceReport persistenceMeasures(const SegmentedAR& fit, Index trajectorySteps) {
    PersistenceReport rep;
    for (const auto& seg : fit.segments) rep.segments.push_back(measuresFor(seg, fit.p));

    if (fit.segments.size() == 3 && fit.p == 2 && rep.segments.front().stationary &&
        rep.segments.back().stationary) {
        rep.hasTrajectories = true;
        rep.t2 = fit.breakTimes[0];
        rep.t1 = fit.breakTimes[1];
        std::vector<SegmentParams> segs;
        for (const auto& s : fit.segments) {
            SegmentParams sp;
            sp.drift = s.drift;
            sp.ar = {s.ar(0), s.ar(1)};
            sp.sigma2 = s.sigma2;
            segs.push_back(std::move(sp));
        }
        rep.varianceTrajectory.resize(trajectorySteps + 1);
        rep.persistenceTrajectory.resize(trajectorySteps + 1);
        const Scalar s1 = segs[2].sigma2;
        for (Index l = 0; l <= trajectorySteps; ++l) {
            const auto v = dabarVariance(segs, rep.t2, rep.t1, l);
            rep.trajectoryTimes.push_back(rep.t1 + l);
            rep.varianceTrajectory(l) = v.var;
            rep.persistenceTrajectory(l) = v.var / s1;
        }
    }
    return rep;
}

ForecastMetrics forecastMetrics(const Vector& actual, const Vector& predicted) {
    if (actual.size() != predicted.size() || actual.size() == 0)
        throw DataError("actual and predicted series must align");
    const Scalar n = static_cast<Scalar>(actual.size());
    ForecastMetrics m;
    const Vector err = predicted - actual;
    m.rmse = std::sqrt(err.squaredNorm() / n);
    m.mae = err.cwiseAbs().sum() / n;
    const Scalar denom =
        std::sqrt(actual.squaredNorm() / n) + std::sqrt(predicted.squaredNorm() / n);
    m.theilU = denom > 0.0 ? m.rmse / denom : 0.0;
    return m;
}

}  // namespace tvarma
