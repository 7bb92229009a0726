#ifndef TVARMA_STOCHASTIC_PATHS_HPP
#define TVARMA_STOCHASTIC_PATHS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// AR law of one stochastic coefficient: phi_t = intercept + sum_l ar[l] phi_{t-l} + e_t.
struct CoeffLaw {
    Scalar intercept = 0.0;
    std::vector<Scalar> ar;
    Scalar noiseSd = 0.1;
};

// Families of stochastically varying AR(p) coefficients. Index 0 of the
// per-coefficient parameter vectors refers to the drift, 1..p to the AR lags.
struct StochasticCoeffSpec {
    enum class Kind { Rc, MarkovBilinear, GenMarkovBilinear, RcExponential, Dsar };
    enum class EtaKind { Normal, TwoPoint };

    Kind kind = Kind::Rc;
    int p = 1;
    std::vector<Scalar> base;  // size p+1: drift and AR centres (c_m for the exotic kinds)
    Scalar noiseSd = 1.0;      // sd of the model innovation

    std::vector<Scalar> etaSd;  // rc: size p+1, own-noise sd per coefficient
    EtaKind etaKind = EtaKind::Normal;

    std::vector<Scalar> load;  // bilinear kinds: loading on eps_t (or a power of it)
    std::vector<int> powers;   // gen markov bilinear exponents r_m >= 1

    std::vector<std::array<Scalar, 3>> expParams;  // rc exponential per coefficient

    std::vector<CoeffLaw> laws;  // dsar: one AR law per coefficient m = 1..p

    void validate() const;
};

// One realized coefficient path over [start, end]. Kinds whose coefficients
// load on the model innovation also fix that innovation series; simulations
// must then be driven with exactly these values.
struct SampledPath {
    CoefficientPath path;
    Index start = 0;
    Index end = 0;
    Matrix arCoeffs;     // (end-start+1) x p realized AR coefficients
    Vector driftSeries;  // realized drift
    Vector linkedNoise;  // model innovations, empty unless the kind ties to them
};

SampledPath sampleStochasticPath(const StochasticCoeffSpec& spec, std::uint64_t seed,
                                 Index start, Index end);

}  // namespace tvarma

#endif
