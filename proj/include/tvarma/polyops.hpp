#ifndef TVARMA_POLYOPS_HPP
#define TVARMA_POLYOPS_HPP

#include <functional>
#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/moments.hpp"
#include "tvarma/process.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// Lag polynomial with time-varying coefficient functions. Acting on a series:
// (sum_j c_j(t) B^j) y_t = sum_j c_j(t) y_{t-j}. Composition follows the skew
// rule B^i f(t) = f(t-i) B^i, so multiplication is associative but does not
// commute.
class LagPoly {
public:
    using CoeffFn = std::function<Scalar(Index)>;
    using SeriesFn = std::function<Scalar(Index)>;

    LagPoly() = default;
    static LagPoly one();

    void set(int lag, CoeffFn fn);
    void setConstant(int lag, Scalar value);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Scalar coeff(int lag, Index t) const;
    Scalar apply(const SeriesFn& series, Index t) const;

private:
    std::vector<CoeffFn> coeffs_;  // index = lag; empty slot = zero
};

LagPoly skewMul(const LagPoly& a, const LagPoly& b);

// The model's AR and MA operators 1 - sum phi_m(t) B^m and 1 + sum theta_l(t) B^l.
LagPoly arPoly(const CoefficientPath& path);
LagPoly maPoly(const CoefficientPath& path);

// Horizon-k operator family built from the Green kernels, as functions of the
// evaluation time t (conditioning time s = t - k):
//   hom:    1 - sum_m xi^(m)(t, t-k) B^(k-1+m)
//   part:   sum_{r<k} xi(t, t-r) B^r
//   maPart: sum_{r<k} xi_q(t, t-r) B^r + sum_{r=k..k-1+q} xi_{s,q}(t, t-r) B^r
struct XiOperators {
    Index k = 1;
    LagPoly hom;
    LagPoly part;
    LagPoly maPart;
};

XiOperators buildXiOperators(const CoefficientPath& path, Index k);

// |hom y_t - part(drift)(t) - maPart eps_t| on a simulated run; zero up to
// rounding by the explicit-representation identity.
Scalar representationResidual(const CoefficientPath& path, const SimulationRun& run, Index t,
                              Index s);

struct TruncatedInverse {
    LagPoly poly;     // coefficients r -> xi(t, t-r), truncated
    int degree = 0;
    int guardBand = 20;  // trailing lags polluted by the truncation
    TailDiagnostics tail;
};

// Left inverse of the AR operator under the skew product: the Wold operator
// with Green-function coefficients. Throws NonSummableError on unstable paths.
TruncatedInverse truncatedInverse(const CoefficientPath& path, Index t,
                                  const TruncationPolicy& policy);

}  // namespace tvarma

#endif
