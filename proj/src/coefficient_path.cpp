#include "tvarma/coefficient_path.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace tvarma {

CoefficientPath constantPath(std::vector<Scalar> ar, std::vector<Scalar> ma, Scalar drift,
                             Scalar sigma2) {
    const int p = static_cast<int>(ar.size());
    const int q = static_cast<int>(ma.size());
    auto arv = std::make_shared<std::vector<Scalar>>(std::move(ar));
    auto mav = std::make_shared<std::vector<Scalar>>(std::move(ma));
    return CoefficientPath(
        p, q, [arv](int m, Index) { return (*arv)[m - 1]; },
        [mav](int l, Index) { return (*mav)[l - 1]; }, [drift](Index) { return drift; },
        [sigma2](Index) { return sigma2; });
}

CoefficientPath logisticArPath(Scalar phi1, Scalar phi2, Scalar gamma, Index tau, Scalar drift,
                               Scalar sigma2) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be non-negative");
    auto coeff = [phi1, phi2, gamma, tau](int, Index t) {
        const Scalar f = 1.0 / (1.0 + std::exp(gamma * static_cast<Scalar>(t - tau)));
        return phi1 * f + (1.0 - f) * phi2;
    };
    return CoefficientPath(1, 0, coeff, nullptr, [drift](Index) { return drift; },
                           [sigma2](Index) { return sigma2; });
}

std::pair<Index, Index> logisticPlateauTimes(Scalar gamma, Index tau, Scalar epsF) {
    if (gamma <= 0.0) throw std::invalid_argument("plateaus require gamma > 0");
    // F(t) >= 1 - epsF  <=>  t - tau <= -log(1/epsF - 1)/gamma  (lower plateau mirrors it)
    const Scalar off = std::log(1.0 / epsF - 1.0) / gamma;
    const Index t1 = tau - static_cast<Index>(std::ceil(off));
    const Index t2 = tau + static_cast<Index>(std::ceil(off));
    return {t1, t2};
}

namespace {

CoefficientPath fromSegmentSelector(std::vector<SegmentParams> segments,
                                    std::function<std::size_t(Index)> segIndex) {
    int p = 0, q = 0;
    for (const auto& s : segments) {
        p = std::max(p, static_cast<int>(s.ar.size()));
        q = std::max(q, static_cast<int>(s.ma.size()));
        if (!(s.sigma2 > 0.0)) throw std::invalid_argument("segment sigma2 must be positive");
    }
    auto segs = std::make_shared<std::vector<SegmentParams>>(std::move(segments));
    auto sel = std::make_shared<std::function<std::size_t(Index)>>(std::move(segIndex));
    auto ar = [segs, sel](int m, Index t) {
        const auto& s = (*segs)[(*sel)(t)];
        return m <= static_cast<int>(s.ar.size()) ? s.ar[m - 1] : 0.0;
    };
    auto ma = [segs, sel](int l, Index t) {
        const auto& s = (*segs)[(*sel)(t)];
        return l <= static_cast<int>(s.ma.size()) ? s.ma[l - 1] : 0.0;
    };
    auto dr = [segs, sel](Index t) { return (*segs)[(*sel)(t)].drift; };
    auto sg = [segs, sel](Index t) { return (*segs)[(*sel)(t)].sigma2; };
    return CoefficientPath(p, q, ar, ma, dr, sg);
}

}  // namespace

CoefficientPath periodicPath(std::vector<SegmentParams> seasons) {
    if (seasons.empty()) throw std::invalid_argument("periodic path needs at least one season");
    const auto ell = static_cast<Index>(seasons.size());
    return fromSegmentSelector(std::move(seasons), [ell](Index t) {
        Index r = t % ell;
        if (r < 0) r += ell;
        return static_cast<std::size_t>(r);
    });
}

CoefficientPath periodicArPath(std::vector<Scalar> seasonPhis, Scalar drift, Scalar sigma2) {
    std::vector<SegmentParams> seasons;
    seasons.reserve(seasonPhis.size());
    for (Scalar c : seasonPhis) seasons.push_back({drift, {c}, {}, sigma2});
    return periodicPath(std::move(seasons));
}

CoefficientPath breakPath(std::vector<SegmentParams> segments, std::vector<Index> breakTimes) {
    if (segments.size() != breakTimes.size() + 1)
        throw std::invalid_argument("need one more segment than break times");
    if (!std::is_sorted(breakTimes.begin(), breakTimes.end()) ||
        std::adjacent_find(breakTimes.begin(), breakTimes.end()) != breakTimes.end())
        throw std::invalid_argument("break times must be strictly increasing");
    auto breaks = std::make_shared<std::vector<Index>>(std::move(breakTimes));
    return fromSegmentSelector(std::move(segments), [breaks](Index t) {
        return static_cast<std::size_t>(
            std::lower_bound(breaks->begin(), breaks->end(), t) - breaks->begin());
    });
}

CoefficientPath gegenbauerPath(Scalar d, Scalar phi) {
    if (!(d > 0.0 && d < 0.5)) throw std::invalid_argument("d must lie in (0, 1/2)");
    if (std::abs(phi) > 1.0) throw std::invalid_argument("|phi| must not exceed 1");
    auto coeff = [d, phi](int m, Index t) {
        if (t < 2) throw std::domain_error("gegenbauer coefficients defined for t >= 2");
        const Scalar j = static_cast<Scalar>(t);
        if (m == 1) return 2.0 * phi * ((d - 1.0) / j + 1.0);
        return -(2.0 * (d - 1.0) / j + 1.0);
    };
    return CoefficientPath(2, 0, coeff, nullptr, [](Index) { return 0.0; },
                           [](Index) { return 1.0; });
}

CoefficientPath exponentialArPath(Scalar phi, Scalar lambda, Index sampleLength, Scalar drift,
                                  Scalar sigma2) {
    if (sampleLength < 1) throw std::invalid_argument("sample length must be >= 1");
    auto coeff = [phi, lambda, sampleLength](int, Index t) {
        if (t <= 0) return phi;
        if (t >= sampleLength) return phi * lambda;
        return phi * std::pow(lambda, static_cast<Scalar>(t) / static_cast<Scalar>(sampleLength));
    };
    return CoefficientPath(1, 0, coeff, nullptr, [drift](Index) { return drift; },
                           [sigma2](Index) { return sigma2; });
}

CoefficientPath tablePath(Index t0, Matrix arByTime, Matrix maByTime, Vector drift,
                          Vector sigma2) {
    const Index rows = drift.size();
    if (arByTime.rows() != rows || maByTime.rows() != rows || sigma2.size() != rows)
        throw std::invalid_argument("table columns must have equal length");
    const int p = static_cast<int>(arByTime.cols());
    const int q = static_cast<int>(maByTime.cols());
    auto at = [t0, rows](Index t) {
        if (t < t0 || t >= t0 + rows) throw DataError("time outside coefficient table window");
        return t - t0;
    };
    auto arv = std::make_shared<Matrix>(std::move(arByTime));
    auto mav = std::make_shared<Matrix>(std::move(maByTime));
    auto drv = std::make_shared<Vector>(std::move(drift));
    auto sgv = std::make_shared<Vector>(std::move(sigma2));
    return CoefficientPath(
        p, q, [arv, at](int m, Index t) { return (*arv)(at(t), m - 1); },
        [mav, at](int l, Index t) { return (*mav)(at(t), l - 1); },
        [drv, at](Index t) { return (*drv)(at(t)); },
        [sgv, at](Index t) { return (*sgv)(at(t)); });
}

CoefficientPath maMirrorPath(const CoefficientPath& path) {
    auto src = std::make_shared<CoefficientPath>(path);
    return CoefficientPath(
        path.q(), 0, [src](int m, Index t) { return -src->theta(m, t); }, nullptr,
        [](Index) { return 0.0; }, [src](Index t) { return src->sigma2(t); });
}

}  // namespace tvarma
