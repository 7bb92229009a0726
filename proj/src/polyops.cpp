#include "tvarma/polyops.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "tvarma/green.hpp"
#include "tvarma/numeric.hpp"

namespace tvarma {

LagPoly LagPoly::one() {
    LagPoly p;
    p.setConstant(0, 1.0);
    return p;
}

void LagPoly::set(int lag, CoeffFn fn) {
    if (lag < 0) throw std::invalid_argument("lag must be non-negative");
    if (lag >= static_cast<int>(coeffs_.size())) coeffs_.resize(lag + 1);
    coeffs_[static_cast<std::size_t>(lag)] = std::move(fn);
}

void LagPoly::setConstant(int lag, Scalar value) {
    set(lag, [value](Index) { return value; });
}

Scalar LagPoly::coeff(int lag, Index t) const {
    if (lag < 0 || lag >= static_cast<int>(coeffs_.size())) return 0.0;
    const auto& fn = coeffs_[static_cast<std::size_t>(lag)];
    return fn ? fn(t) : 0.0;
}

Scalar LagPoly::apply(const SeriesFn& series, Index t) const {
    KahanSum acc;
    for (int j = 0; j < static_cast<int>(coeffs_.size()); ++j) {
        const auto& fn = coeffs_[static_cast<std::size_t>(j)];
        if (fn) acc.add(fn(t) * series(t - j));
    }
    return acc.value();
}

LagPoly skewMul(const LagPoly& a, const LagPoly& b) {
    auto lhs = std::make_shared<LagPoly>(a);
    auto rhs = std::make_shared<LagPoly>(b);
    LagPoly out;
    const int degA = a.degree(), degB = b.degree();
    if (degA < 0 || degB < 0) return out;  // zero polynomial
    for (int k = 0; k <= degA + degB; ++k) {
        out.set(k, [lhs, rhs, k](Index t) {
            Scalar acc = 0.0;
            for (int i = std::max(0, k - rhs->degree()); i <= std::min(k, lhs->degree()); ++i)
                acc += lhs->coeff(i, t) * rhs->coeff(k - i, t - i);
            return acc;
        });
    }
    return out;
}

LagPoly arPoly(const CoefficientPath& path) {
    auto p = std::make_shared<CoefficientPath>(path);
    LagPoly out = LagPoly::one();
    for (int m = 1; m <= path.p(); ++m)
        out.set(m, [p, m](Index t) { return -p->phi(m, t); });
    return out;
}

LagPoly maPoly(const CoefficientPath& path) {
    auto p = std::make_shared<CoefficientPath>(path);
    LagPoly out = LagPoly::one();
    for (int l = 1; l <= path.q(); ++l)
        out.set(l, [p, l](Index t) { return p->theta(l, t); });
    return out;
}

XiOperators buildXiOperators(const CoefficientPath& path, Index k) {
    if (k < 1) throw std::invalid_argument("horizon must be positive");
    auto p = std::make_shared<CoefficientPath>(path);
    XiOperators ops;
    ops.k = k;

    ops.hom.setConstant(0, 1.0);
    for (int m = 1; m <= path.p(); ++m)
        ops.hom.set(static_cast<int>(k) - 1 + m,
                    [p, m, k](Index t) { return -greenFundamental(*p, m, t, t - k); });

    for (int r = 0; r < k; ++r)
        ops.part.set(r, [p, r](Index t) { return green(*p, t, t - r); });

    for (int r = 0; r < k; ++r)
        ops.maPart.set(r, [p, r](Index t) { return impulseWeight(*p, t, t - r); });
    for (int r = static_cast<int>(k); r <= static_cast<int>(k) - 1 + path.q(); ++r)
        ops.maPart.set(r,
                       [p, r, k](Index t) { return pastInnovationWeight(*p, t - k, t, t - r); });
    return ops;
}

Scalar representationResidual(const CoefficientPath& path, const SimulationRun& run, Index t,
                              Index s) {
    if (s >= t) throw std::invalid_argument("conditioning time must precede t");
    const Index needLow = s + 1 - path.p() - path.q();
    if (run.start > needLow || run.start + run.y.size() - 1 < t)
        throw std::invalid_argument("run does not cover the operator window");
    auto ops = buildXiOperators(path, t - s);
    const Scalar lhs = ops.hom.apply([&](Index u) { return run.yAt(u); }, t);
    const Scalar driftPart = ops.part.apply([&](Index u) { return path.drift(u); }, t);
    const Scalar innovPart = ops.maPart.apply([&](Index u) { return run.epsAt(u); }, t);
    return std::abs(lhs - driftPart - innovPart);
}

TruncatedInverse truncatedInverse(const CoefficientPath& path, Index t,
                                  const TruncationPolicy& policy) {
    auto stability = stabilityReport(path, t, {}, policy);
    if (!stability.absSumConverged)
        throw NonSummableError("AR operator is not invertible under the policy");

    TruncatedInverse inv;
    inv.tail = stability.tail;
    inv.degree = static_cast<int>(stability.tail.termsUsed) - 1;
    auto p = std::make_shared<CoefficientPath>(path);
    // per-lag memo: the coefficient is a function of the evaluation time
    for (int r = 0; r <= inv.degree; ++r) {
        auto memo = std::make_shared<std::map<Index, Scalar>>();
        inv.poly.set(r, [p, r, memo](Index u) {
            auto it = memo->find(u);
            if (it != memo->end()) return it->second;
            const Scalar v = green(*p, u, u - r);
            (*memo)[u] = v;
            return v;
        });
    }
    return inv;
}

}  // namespace tvarma
