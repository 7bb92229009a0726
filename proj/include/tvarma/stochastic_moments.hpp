#ifndef TVARMA_STOCHASTIC_MOMENTS_HPP
#define TVARMA_STOCHASTIC_MOMENTS_HPP

#include <cstdint>

#include "tvarma/errors.hpp"
#include "tvarma/forecast.hpp"
#include "tvarma/stochastic_paths.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// First and second moments of the random coefficient vector (drift included,
// index m = 0..p) together with the contemporaneous cross moments with the
// model innovation.
struct GrcMomentInputs {
    int p = 1;
    Vector mean;      // size p+1
    Matrix cov;       // (p+1) x (p+1), sigma_mn
    Vector crossEps;  // size p+1, E(phi_mt eps_t)
    Scalar noiseVar = 1.0;

    void validate() const;
};

// Closed-form moment inputs for the generator kinds with tractable moments
// (rc, markov bilinear and, with Gaussian innovations, the generalized one).
GrcMomentInputs grcInputs(const StochasticCoeffSpec& spec);

// drift / (1 - sum of AR coefficient means); requires |sum| < 1.
Scalar grcMean(const GrcMomentInputs& inputs);

// Effective squared innovation scale entering the covariance recursion.
Scalar grcSigma2(const GrcMomentInputs& inputs, Scalar processMean);

// E(companion ⊗ companion), assembled analytically from means and covariances.
Matrix expectedCompanionKron(const GrcMomentInputs& inputs);

Scalar spectralRadius(const Matrix& m);

// Autocovariances gamma(0..maxLag): the first p from the Kronecker-inverse
// entries, the rest through the constant-coefficient fundamental solutions of
// the mean path. Requires the spectral radius condition.
Vector grcAutocov(const GrcMomentInputs& inputs, Index maxLag);

// Monte Carlo moments of a double-stochastic AR process at time t: per-depth
// expectations of the Green function and the first two unconditional moments
// assembled from them, with standard errors and a divergence flag.
struct DsarMomentsReport {
    Scalar mean = 0.0;
    Scalar meanSe = 0.0;
    Scalar variance = 0.0;
    Scalar varianceSe = 0.0;
    Vector sumExpectationPartials;  // cumulative sum over depth of E(xi)
    Vector sumSquarePartials;       // cumulative sum over depth of E(xi^2)
    bool diverged = false;
    Index depth = 0;
    Index replications = 0;
};

DsarMomentsReport dsarMomentsMc(const StochasticCoeffSpec& spec, Index t, Index n,
                                std::uint64_t seed, Index depth = 300, int threads = 1);

struct DsarForecast {
    ForecastReport report;  // mse carries the conditional variance
    Scalar pointSe = 0.0;
    Index replications = 0;
};

// Conditional-expectation predictor of the DS-AR process: coefficient paths
// are simulated forward from their observed states (antithetic pairs), and
// the Green-function expectations averaged.
// yState = (y_s, ..., y_{s+1-p}); coeffState[m-1] = (phi_{m,s}, ..., phi_{m,s+1-p_m}).
DsarForecast dsarPredict(const StochasticCoeffSpec& spec, Index t, Index s,
                         const Vector& yState, const std::vector<Vector>& coeffState,
                         Index n, std::uint64_t seed);

// Monte Carlo evidence for the almost-sure stability diagnostics of a random
// coefficient AR: decay of the Green function and of the companion-weighted
// innovations, plus running suprema.
struct RcarStabilityReport {
    Index tMax = 0;
    Index replications = 0;
    Scalar tol = 1e-6;
    Scalar fracGreenDecayed = 0.0;     // |xi(tMax, s)| < tol
    Scalar fracTermDecayed = 0.0;      // |C_{t-1,s} eps_t| < tol at tMax
    Scalar medianRunningSup = 0.0;     // median over paths of sup_t |C_{t-1,s} eps_t|
    Scalar maxRunningSup = 0.0;
};

RcarStabilityReport rcarStabilityDiag(const StochasticCoeffSpec& spec, Index s, Index tMax,
                                      Index n, std::uint64_t seed, Scalar tol = 1e-6);

}  // namespace tvarma

#endif
