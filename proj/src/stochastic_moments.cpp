#include "tvarma/stochastic_moments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tvarma/green.hpp"
#include "tvarma/numeric.hpp"

namespace tvarma {

void GrcMomentInputs::validate() const {
    const Index np = p + 1;
    if (mean.size() != np || cov.rows() != np || cov.cols() != np || crossEps.size() != np)
        throw std::invalid_argument("moment inputs must cover drift plus p coefficients");
    if (!(noiseVar > 0.0)) throw std::invalid_argument("noise variance must be positive");
    if (!cov.isApprox(cov.transpose(), 1e-12))
        throw std::invalid_argument("coefficient covariance must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("coefficient covariance must be positive semidefinite");
}

namespace {

Scalar gaussianMoment(Scalar sd, int order) {
    if (order % 2 == 1) return 0.0;
    Scalar acc = 1.0;
    for (int k = order - 1; k > 1; k -= 2) acc *= static_cast<Scalar>(k);
    return acc * std::pow(sd, order);
}

}  // namespace

GrcMomentInputs grcInputs(const StochasticCoeffSpec& spec) {
    spec.validate();
    const Index np = spec.p + 1;
    GrcMomentInputs in;
    in.p = spec.p;
    in.mean.resize(np);
    in.cov = Matrix::Zero(np, np);
    in.crossEps = Vector::Zero(np);
    in.noiseVar = spec.noiseSd * spec.noiseSd;
    switch (spec.kind) {
        case StochasticCoeffSpec::Kind::Rc:
            for (Index m = 0; m < np; ++m) {
                in.mean(m) = spec.base[static_cast<std::size_t>(m)];
                const Scalar sd = spec.etaSd[static_cast<std::size_t>(m)];
                in.cov(m, m) = sd * sd;
            }
            break;
        case StochasticCoeffSpec::Kind::MarkovBilinear:
            for (Index m = 0; m < np; ++m) {
                in.mean(m) = spec.base[static_cast<std::size_t>(m)];
                in.crossEps(m) = spec.load[static_cast<std::size_t>(m)] * in.noiseVar;
                for (Index k = 0; k < np; ++k)
                    in.cov(m, k) = spec.load[static_cast<std::size_t>(m)] *
                                   spec.load[static_cast<std::size_t>(k)] * in.noiseVar;
            }
            break;
        case StochasticCoeffSpec::Kind::GenMarkovBilinear:
            for (Index m = 0; m < np; ++m) {
                const Scalar lm = spec.load[static_cast<std::size_t>(m)];
                const int rm = spec.powers[static_cast<std::size_t>(m)];
                in.mean(m) = spec.base[static_cast<std::size_t>(m)] +
                             lm * gaussianMoment(spec.noiseSd, rm);
                in.crossEps(m) = lm * gaussianMoment(spec.noiseSd, rm + 1);
            }
            for (Index m = 0; m < np; ++m)
                for (Index k = 0; k < np; ++k) {
                    const Scalar lm = spec.load[static_cast<std::size_t>(m)];
                    const Scalar lk = spec.load[static_cast<std::size_t>(k)];
                    const int rm = spec.powers[static_cast<std::size_t>(m)];
                    const int rk = spec.powers[static_cast<std::size_t>(k)];
                    in.cov(m, k) = lm * lk *
                                   (gaussianMoment(spec.noiseSd, rm + rk) -
                                    gaussianMoment(spec.noiseSd, rm) *
                                        gaussianMoment(spec.noiseSd, rk));
                }
            break;
        default:
            throw std::invalid_argument("closed-form moment inputs exist only for the rc and "
                                        "bilinear generator kinds");
    }
    return in;
}

Scalar grcMean(const GrcMomentInputs& inputs) {
    inputs.validate();
    const Scalar sum = inputs.mean.tail(inputs.p).sum();
    if (!(std::abs(sum) < 1.0))
        throw ConditionViolatedError("mean AR coefficients must sum inside the unit interval");
    return inputs.mean(0) / (1.0 - sum);
}

Scalar grcSigma2(const GrcMomentInputs& inputs, Scalar processMean) {
    inputs.validate();
    const Scalar y = processMean;
    Scalar acc = inputs.noiseVar + inputs.cov(0, 0) + 2.0 * inputs.crossEps(0);
    Scalar cross = 0.0;
    for (int m = 1; m <= inputs.p; ++m) cross += inputs.crossEps(m) + inputs.cov(m, 0);
    acc += 2.0 * y * cross;
    acc += y * y * inputs.cov.bottomRightCorner(inputs.p, inputs.p).sum();
    return acc;
}

Matrix expectedCompanionKron(const GrcMomentInputs& inputs) {
    const int p = inputs.p;
    Matrix k = Matrix::Zero(p * p, p * p);
    auto idx = [p](int i, int j) { return (i - 1) * p + (j - 1); };  // 1-based blocks
    for (int i = 1; i <= p; ++i)
        for (int kk = 1; kk <= p; ++kk)
            for (int j = 1; j <= p; ++j)
                for (int l = 1; l <= p; ++l) {
                    Scalar v;
                    if (i == 1 && kk == 1)
                        v = inputs.cov(j, l) + inputs.mean(j) * inputs.mean(l);
                    else if (i == 1)
                        v = (kk - 1 == l) ? inputs.mean(j) : 0.0;
                    else if (kk == 1)
                        v = (i - 1 == j) ? inputs.mean(l) : 0.0;
                    else
                        v = (i - 1 == j && kk - 1 == l) ? 1.0 : 0.0;
                    k(idx(i, kk), idx(j, l)) = v;
                }
    return k;
}

Scalar spectralRadius(const Matrix& m) {
    Eigen::EigenSolver<Matrix> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Vector grcAutocov(const GrcMomentInputs& inputs, Index maxLag) {
    inputs.validate();
    if (maxLag < 0) throw std::invalid_argument("maxLag must be non-negative");
    const int p = inputs.p;
    const Matrix kron = expectedCompanionKron(inputs);
    if (!(spectralRadius(kron) < 1.0))
        throw ConditionViolatedError(
            "largest eigenvalue of the expected Kronecker companion is not inside the unit "
            "circle");
    const Scalar y = grcMean(inputs);
    const Scalar sigma2 = grcSigma2(inputs, y);

    const Matrix system = Matrix::Identity(p * p, p * p) - kron;
    Eigen::PartialPivLU<Matrix> lu(system);
    if (std::abs(lu.determinant()) < 1e-300)
        throw ConditionViolatedError("kron system is singular");
    const Matrix inv = lu.inverse();

    Vector gamma(maxLag + 1);
    for (Index l = 0; l < std::min<Index>(p, maxLag + 1); ++l)
        gamma(l) = inv(l + 1 - 1, 0) * sigma2;

    if (maxLag >= p) {
        std::vector<Scalar> meanAr(static_cast<std::size_t>(p));
        for (int m = 1; m <= p; ++m) meanAr[static_cast<std::size_t>(m - 1)] = inputs.mean(m);
        auto meanPath = constantPath(meanAr);
        for (Index l = p; l <= maxLag; ++l) {
            Scalar acc = 0.0;
            for (int m = 1; m <= p; ++m)
                acc += greenFundamental(meanPath, m, l, 0) * gamma(m - 1);
            gamma(l) = acc;
        }
    }
    return gamma;
}

namespace {

// one realized Green row xi(t, t-j) for j = 0..depth given realized coefficients
void greenRowFromCoeffs(const Matrix& ar, Index tRow, int p, Index depth, Vector& out) {
    // out(j) = xi(t, t-j); adjoint recursion in the second argument
    out(0) = 1.0;
    for (Index j = 1; j <= depth; ++j) {
        Scalar v = 0.0;
        for (int m = 1; m <= p && m <= j; ++m) {
            // coefficient phi_m at time (t-j)+m, row index tRow - j + m
            v += ar(tRow - j + m, m - 1) * out(j - m);
        }
        out(j) = v;
    }
}

}  // namespace

DsarMomentsReport dsarMomentsMc(const StochasticCoeffSpec& spec, Index t, Index n,
                                std::uint64_t seed, Index depth, int threads) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("need at least one replication");
    const int p = spec.p;
    const Scalar phi0 = spec.base[0];
    const Scalar sigmaEps2 = spec.noiseSd * spec.noiseSd;

    struct ChunkState {
        Vector sumXi, sumXi2;
        MomentAccumulator s1, s2;
        bool init = false;
    };
    Vector sumXi = Vector::Zero(depth + 1);
    Vector sumXi2 = Vector::Zero(depth + 1);
    MomentAccumulator s1, s2;

    std::function<void(std::int64_t, ChunkState&)> body = [&](std::int64_t i, ChunkState& st) {
        if (!st.init) {
            st.sumXi = Vector::Zero(depth + 1);
            st.sumXi2 = Vector::Zero(depth + 1);
            st.init = true;
        }
        auto sp = sampleStochasticPath(spec, splitSeed(seed, static_cast<std::uint64_t>(i)),
                                       t - depth, t);
        Vector row(depth + 1);
        greenRowFromCoeffs(sp.arCoeffs, depth, p, depth, row);
        Scalar rowSum = 0.0, rowSumSq = 0.0;
        for (Index j = 0; j <= depth; ++j) {
            st.sumXi(j) += row(j);
            st.sumXi2(j) += row(j) * row(j);
            rowSum += row(j);
            rowSumSq += row(j) * row(j);
        }
        st.s1.add(rowSum);
        st.s2.add(rowSumSq);
    };
    parallelChunks<ChunkState>(n, threads, body, [&](const ChunkState& st) {
        if (!st.init) return;
        sumXi += st.sumXi;
        sumXi2 += st.sumXi2;
        s1.merge(st.s1);
        s2.merge(st.s2);
    });

    DsarMomentsReport rep;
    rep.depth = depth;
    rep.replications = n;
    const Scalar invN = 1.0 / static_cast<Scalar>(n);
    Vector meanXi = sumXi * invN;
    Vector meanXi2 = sumXi2 * invN;

    rep.sumExpectationPartials.resize(depth + 1);
    rep.sumSquarePartials.resize(depth + 1);
    Scalar accE = 0.0, accE2 = 0.0;
    for (Index j = 0; j <= depth; ++j) {
        accE += meanXi(j);
        accE2 += meanXi2(j);
        rep.sumExpectationPartials(j) = accE;
        rep.sumSquarePartials(j) = accE2;
    }

    rep.mean = phi0 * s1.mean();
    rep.meanSe = std::abs(phi0) * s1.stderrMean();

    Scalar sumVar = 0.0, sumVarSe = 0.0;
    for (Index j = 0; j <= depth; ++j) {
        const Scalar varXi = std::max(meanXi2(j) - meanXi(j) * meanXi(j), 0.0);
        sumVar += varXi;
        const Scalar seMean = std::sqrt(std::max(varXi, 0.0) * invN);
        sumVarSe += 2.0 * std::abs(meanXi(j)) * seMean;
    }
    rep.variance = phi0 * phi0 * sumVar + sigmaEps2 * s2.mean();
    rep.varianceSe = (phi0 * phi0 + sigmaEps2) * s2.stderrMean() + phi0 * phi0 * sumVarSe;

    // growing increments of the E(xi^2) partial sums signal divergence
    const Index half = depth / 2;
    rep.diverged = meanXi2(depth) > meanXi2(half) || !std::isfinite(meanXi2(depth));
    return rep;
}

DsarForecast dsarPredict(const StochasticCoeffSpec& spec, Index t, Index s,
                         const Vector& yState, const std::vector<Vector>& coeffState, Index n,
                         std::uint64_t seed) {
    spec.validate();
    if (spec.kind != StochasticCoeffSpec::Kind::Dsar)
        throw std::invalid_argument("predictor applies to the dsar kind");
    if (s >= t) throw std::invalid_argument("forecast origin must precede t");
    const int p = spec.p;
    if (yState.size() < p) throw InsufficientHistoryError("need p observed values", p);
    if (coeffState.size() != static_cast<std::size_t>(p))
        throw InsufficientHistoryError("need one observed state per coefficient", p);
    for (int m = 0; m < p; ++m)
        if (coeffState[static_cast<std::size_t>(m)].size() <
            static_cast<Index>(spec.laws[static_cast<std::size_t>(m)].ar.size()))
            throw InsufficientHistoryError("coefficient history shorter than its law order",
                                           static_cast<Index>(
                                               spec.laws[static_cast<std::size_t>(m)].ar.size()));

    const Index k = t - s;
    const Index pairs = (n + 1) / 2;
    const Scalar phi0 = spec.base[0];
    const Scalar sigmaEps2 = spec.noiseSd * spec.noiseSd;

    // per-depth accumulators for xi(t, r), r = s..t  (depth j = t - r)
    Vector sumXi = Vector::Zero(k + 1), sumXi2 = Vector::Zero(k + 1);
    MomentAccumulator pointAcc;

    Matrix ar = Matrix::Zero(k + p + 1, p);  // realized coefficients, row u-s+p = time u
    Matrix noise(k, p);               // coefficient innovations for times s+1..t
    std::mt19937_64 rng(seed);
    std::normal_distribution<Scalar> stdNormal(0.0, 1.0);
    Vector row(k + 1);

    for (Index pair = 0; pair < pairs; ++pair) {
        for (Index i = 0; i < k; ++i)
            for (int m = 0; m < p; ++m) noise(i, m) = stdNormal(rng);
        for (int sign : {+1, -1}) {
            // roll the coefficient laws forward from the observed state
            for (int m = 1; m <= p; ++m) {
                const auto& law = spec.laws[static_cast<std::size_t>(m - 1)];
                const int pm = static_cast<int>(law.ar.size());
                auto coeffAt = [&](Index u) -> Scalar {
                    // u <= s comes from the observed state vector
                    if (u <= s) return coeffState[static_cast<std::size_t>(m - 1)](s - u);
                    return ar(u - s + p, m - 1);
                };
                for (Index u = s + 1; u <= t; ++u) {
                    Scalar v = law.intercept +
                               static_cast<Scalar>(sign) * law.noiseSd * noise(u - s - 1, m - 1);
                    for (int l = 1; l <= pm; ++l)
                        v += law.ar[static_cast<std::size_t>(l - 1)] * coeffAt(u - l);
                    ar(u - s + p, m - 1) = v;
                }
            }
            // Green row xi(t, t-j), j = 0..k, over the realized coefficients
            row(0) = 1.0;
            for (Index j = 1; j <= k; ++j) {
                Scalar v = 0.0;
                for (int m = 1; m <= p && m <= j; ++m) {
                    const Index u = t - j + m;  // > s whenever j <= k
                    v += ar(u - s + p, m - 1) * row(j - m);
                }
                row(j) = v;
            }
            Scalar pt = 0.0, sumRow = 0.0;
            for (Index j = 0; j < k; ++j) sumRow += row(j);  // r = s+1..t
            pt += phi0 * sumRow;
            for (Index j = 0; j <= k; ++j) {
                sumXi(j) += row(j);
                sumXi2(j) += row(j) * row(j);
            }
            // fundamental solutions at (t, s) from the same row
            for (int m = 1; m <= p; ++m) {
                Scalar f = 0.0;
                for (int r = 1; r <= p + 1 - m; ++r) {
                    const Index u = s + r;
                    if (u > t) break;
                    f += ar(u - s + p, m - 2 + r) * row(t - u);
                }
                pt += f * yState(m - 1);
            }
            pointAcc.add(pt);
        }
    }

    const Scalar invN = 1.0 / static_cast<Scalar>(2 * pairs);
    // conditional variance: spread of the coefficient-driven conditional mean
    // (drift weights and state weights jointly) plus the innovation term
    Scalar condVar = pointAcc.variance();
    for (Index j = 0; j < k; ++j) condVar += sigmaEps2 * sumXi2(j) * invN;  // r = s+1..t

    DsarForecast out;
    out.report.t = t;
    out.report.s = s;
    out.report.point = pointAcc.mean();
    out.report.mse = condVar;
    out.report.feWeights = sumXi.head(k) * invN;
    out.pointSe = pointAcc.stderrMean();
    out.replications = 2 * pairs;
    return out;
}

RcarStabilityReport rcarStabilityDiag(const StochasticCoeffSpec& spec, Index s, Index tMax,
                                      Index n, std::uint64_t seed, Scalar tol) {
    spec.validate();
    if (tMax <= s) throw std::invalid_argument("tMax must exceed the start time");
    const int p = spec.p;
    RcarStabilityReport rep;
    rep.tMax = tMax;
    rep.replications = n;
    rep.tol = tol;

    std::vector<Scalar> sups;
    sups.reserve(static_cast<std::size_t>(n));
    Index greenDecayed = 0, termDecayed = 0;
    for (Index i = 0; i < n; ++i) {
        auto sp = sampleStochasticPath(spec, splitSeed(seed, static_cast<std::uint64_t>(i)), s, tMax);
        std::mt19937_64 rng(splitSeed(seed ^ 0x5bf03u, static_cast<std::uint64_t>(i)));
        std::normal_distribution<Scalar> stdNormal(0.0, spec.noiseSd);
        Vector c = Vector::Zero(p);
        c(0) = 1.0;  // first column of the companion product
        Scalar sup = 0.0, lastTerm = 0.0;
        Vector next(p);
        for (Index u = s + 1; u <= tMax; ++u) {
            lastTerm = std::abs(stdNormal(rng)) * c.norm();  // |C_{u-1,s} eps_u|
            sup = std::max(sup, lastTerm);
            Scalar top = 0.0;
            for (int m = 1; m <= p; ++m) top += sp.arCoeffs(u - s, m - 1) * c(m - 1);
            for (int m = p - 1; m > 0; --m) next(m) = c(m - 1);
            next(0) = top;
            c = next;
        }
        if (std::abs(c(0)) < tol) ++greenDecayed;
        if (lastTerm < tol) ++termDecayed;
        sups.push_back(sup);
    }
    std::sort(sups.begin(), sups.end());
    rep.fracGreenDecayed = static_cast<Scalar>(greenDecayed) / static_cast<Scalar>(n);
    rep.fracTermDecayed = static_cast<Scalar>(termDecayed) / static_cast<Scalar>(n);
    rep.medianRunningSup = sups[sups.size() / 2];
    rep.maxRunningSup = sups.back();
    return rep;
}

}  // namespace tvarma
