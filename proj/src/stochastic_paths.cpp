#include "tvarma/stochastic_paths.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <random>

namespace tvarma {

void StochasticCoeffSpec::validate() const {
    if (p < 1) throw std::invalid_argument("stochastic spec needs p >= 1");
    if (!(noiseSd > 0.0)) throw std::invalid_argument("model noise sd must be positive");
    const auto np = static_cast<std::size_t>(p) + 1;
    if (base.size() != np) throw std::invalid_argument("base must hold drift plus p entries");
    switch (kind) {
        case Kind::Rc:
            if (etaSd.size() != np) throw std::invalid_argument("etaSd must hold p+1 entries");
            for (Scalar s : etaSd)
                if (s < 0.0) throw std::invalid_argument("eta sd must be non-negative");
            break;
        case Kind::MarkovBilinear:
            if (load.size() != np) throw std::invalid_argument("load must hold p+1 entries");
            break;
        case Kind::GenMarkovBilinear:
            if (load.size() != np || powers.size() != np)
                throw std::invalid_argument("load and powers must hold p+1 entries");
            for (int r : powers)
                if (r < 1) throw std::invalid_argument("powers must be positive");
            break;
        case Kind::RcExponential:
            if (expParams.size() != np)
                throw std::invalid_argument("expParams must hold p+1 entries");
            for (const auto& row : expParams)
                if (row[2] < 0.0) throw std::invalid_argument("exponential rate must be >= 0");
            break;
        case Kind::Dsar:
            if (laws.size() != static_cast<std::size_t>(p))
                throw std::invalid_argument("dsar needs one coefficient law per AR lag");
            for (const auto& law : laws) {
                if (law.ar.empty()) throw std::invalid_argument("coefficient law order must be >= 1");
                if (!(law.noiseSd >= 0.0))
                    throw std::invalid_argument("coefficient noise sd must be non-negative");
            }
            break;
    }
}

namespace {

Scalar drawEta(std::mt19937_64& rng, StochasticCoeffSpec::EtaKind kind, Scalar sd) {
    if (sd == 0.0) return 0.0;
    if (kind == StochasticCoeffSpec::EtaKind::TwoPoint)
        return (rng() & 1u) ? sd : -sd;
    std::normal_distribution<Scalar> normal(0.0, sd);
    return normal(rng);
}

}  // namespace

SampledPath sampleStochasticPath(const StochasticCoeffSpec& spec, std::uint64_t seed,
                                 Index start, Index end) {
    spec.validate();
    if (end < start) throw std::invalid_argument("empty sampling window");
    const Index rows = end - start + 1;
    const int p = spec.p;

    std::mt19937_64 rng(seed);
    std::normal_distribution<Scalar> stdNormal(0.0, 1.0);

    SampledPath out;
    out.start = start;
    out.end = end;
    out.arCoeffs.resize(rows, p);
    out.driftSeries.resize(rows);

    const bool linked = spec.kind == StochasticCoeffSpec::Kind::MarkovBilinear ||
                        spec.kind == StochasticCoeffSpec::Kind::GenMarkovBilinear ||
                        spec.kind == StochasticCoeffSpec::Kind::RcExponential;
    if (linked) {
        out.linkedNoise.resize(rows);
        for (Index i = 0; i < rows; ++i) out.linkedNoise(i) = spec.noiseSd * stdNormal(rng);
    }

    switch (spec.kind) {
        case StochasticCoeffSpec::Kind::Rc:
            for (Index i = 0; i < rows; ++i) {
                out.driftSeries(i) = spec.base[0] + drawEta(rng, spec.etaKind, spec.etaSd[0]);
                for (int m = 1; m <= p; ++m)
                    out.arCoeffs(i, m - 1) =
                        spec.base[static_cast<std::size_t>(m)] +
                        drawEta(rng, spec.etaKind, spec.etaSd[static_cast<std::size_t>(m)]);
            }
            break;
        case StochasticCoeffSpec::Kind::MarkovBilinear:
            for (Index i = 0; i < rows; ++i) {
                const Scalar e = out.linkedNoise(i);
                out.driftSeries(i) = spec.base[0] + spec.load[0] * e;
                for (int m = 1; m <= p; ++m)
                    out.arCoeffs(i, m - 1) = spec.base[static_cast<std::size_t>(m)] +
                                             spec.load[static_cast<std::size_t>(m)] * e;
            }
            break;
        case StochasticCoeffSpec::Kind::GenMarkovBilinear:
            for (Index i = 0; i < rows; ++i) {
                const Scalar e = out.linkedNoise(i);
                out.driftSeries(i) =
                    spec.base[0] + spec.load[0] * std::pow(e, spec.powers[0]);
                for (int m = 1; m <= p; ++m)
                    out.arCoeffs(i, m - 1) =
                        spec.base[static_cast<std::size_t>(m)] +
                        spec.load[static_cast<std::size_t>(m)] *
                            std::pow(e, spec.powers[static_cast<std::size_t>(m)]);
            }
            break;
        case StochasticCoeffSpec::Kind::RcExponential:
            for (Index i = 0; i < rows; ++i) {
                const Scalar e = out.linkedNoise(i);
                auto coeff = [&](std::size_t m) {
                    const auto& pr = spec.expParams[m];
                    return spec.base[m] + (pr[0] + pr[1] * std::exp(-pr[2] * e * e)) * e;
                };
                out.driftSeries(i) = coeff(0);
                for (int m = 1; m <= p; ++m)
                    out.arCoeffs(i, m - 1) = coeff(static_cast<std::size_t>(m));
            }
            break;
        case StochasticCoeffSpec::Kind::Dsar: {
            const Index coeffBurn = 300;
            for (int m = 1; m <= p; ++m) {
                const auto& law = spec.laws[static_cast<std::size_t>(m - 1)];
                const int pm = static_cast<int>(law.ar.size());
                const Scalar sumAr =
                    std::accumulate(law.ar.begin(), law.ar.end(), Scalar(0.0));
                // seed at the fixed point when it exists, at the intercept otherwise
                const Scalar seedValue =
                    std::abs(1.0 - sumAr) > 1e-8 ? law.intercept / (1.0 - sumAr) : law.intercept;
                std::vector<Scalar> hist(static_cast<std::size_t>(pm), seedValue);
                auto step = [&]() {
                    Scalar v = law.intercept + law.noiseSd * stdNormal(rng);
                    for (int l = 0; l < pm; ++l)
                        v += law.ar[static_cast<std::size_t>(l)] * hist[static_cast<std::size_t>(l)];
                    for (int l = pm - 1; l > 0; --l)
                        hist[static_cast<std::size_t>(l)] = hist[static_cast<std::size_t>(l - 1)];
                    hist[0] = v;
                    return v;
                };
                for (Index b = 0; b < coeffBurn; ++b) step();
                for (Index i = 0; i < rows; ++i) out.arCoeffs(i, m - 1) = step();
            }
            out.driftSeries.setConstant(spec.base[0]);
            break;
        }
    }

    auto ar = std::make_shared<Matrix>(out.arCoeffs);
    auto dr = std::make_shared<Vector>(out.driftSeries);
    const Scalar s2 = spec.noiseSd * spec.noiseSd;
    auto at = [start, rows](Index t) {
        if (t < start || t >= start + rows) throw DataError("time outside sampled window");
        return t - start;
    };
    out.path = CoefficientPath(
        p, 0, [ar, at](int m, Index t) { return (*ar)(at(t), m - 1); }, nullptr,
        [dr, at](Index t) { return (*dr)(at(t)); }, [s2](Index) { return s2; });
    return out;
}

}  // namespace tvarma
