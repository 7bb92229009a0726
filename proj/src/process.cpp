#include "tvarma/process.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tvarma {

namespace {

Scalar drawUnitNoise(const TvArmaModel& model, std::mt19937_64& rng) {
    if (model.noise == NoiseFamily::Gaussian) {
        std::normal_distribution<Scalar> normal(0.0, 1.0);
        return normal(rng);
    }
    if (!(model.studentDf > 4.0))
        throw std::invalid_argument("student-t noise needs df > 4");
    std::student_t_distribution<Scalar> student(model.studentDf);
    // rescale to unit variance: var of t_df is df/(df-2)
    return student(rng) * std::sqrt((model.studentDf - 2.0) / model.studentDf);
}

SimulationRun iterateModel(const CoefficientPath& path, Index start, const Vector& eps,
                           const std::optional<InitialValues>& initial) {
    const int p = path.p();
    const int q = path.q();
    const Index n = eps.size();
    Vector y(n);
    auto yLag = [&](Index t, int m) -> Scalar {
        const Index u = t - m;
        if (u >= start) return y(u - start);
        if (initial && start - u <= initial->y.size()) return initial->y(start - u - 1);
        return 0.0;
    };
    auto epsLag = [&](Index t, int l) -> Scalar {
        const Index u = t - l;
        if (u >= start) return eps(u - start);
        if (initial && start - u <= initial->eps.size()) return initial->eps(start - u - 1);
        return 0.0;
    };
    for (Index i = 0; i < n; ++i) {
        const Index t = start + i;
        Scalar v = path.drift(t) + eps(i);
        for (int m = 1; m <= p; ++m) v += path.phi(m, t) * yLag(t, m);
        for (int l = 1; l <= q; ++l) v += path.theta(l, t) * epsLag(t, l);
        y(i) = v;
    }
    SimulationRun run;
    run.start = start;
    run.y = std::move(y);
    run.eps = eps;
    return run;
}

}  // namespace

SimulationRun simulate(const TvArmaModel& model, std::uint64_t seed,
                       const std::optional<InitialValues>& initial, Index burnIn) {
    if (model.tMax < model.tMin) throw std::invalid_argument("empty simulation window");
    const Index start = model.tMin - burnIn;
    const Index n = model.tMax - start + 1;
    std::mt19937_64 rng(seed);
    Vector eps(n);
    for (Index i = 0; i < n; ++i)
        eps(i) = drawUnitNoise(model, rng) * std::sqrt(model.path.sigma2(start + i));
    SimulationRun run = iterateModel(model.path, start, eps, initial);
    if (burnIn > 0) {
        run.y = run.y.tail(n - burnIn).eval();
        run.eps = run.eps.tail(n - burnIn).eval();
        run.start = model.tMin;
    }
    run.seed = seed;
    run.burnIn = burnIn;
    return run;
}

SimulationRun simulateWithInnovations(const CoefficientPath& path, Index start,
                                      const Vector& innovations,
                                      const std::optional<InitialValues>& initial) {
    return iterateModel(path, start, innovations, initial);
}

Scalar represent(const CoefficientPath& path, Index t, Index s, const Vector& prescribedY,
                 const Vector& prescribedEps, const Vector& futureEps) {
    if (s >= t) throw std::invalid_argument("conditioning time must precede t");
    const int p = path.p();
    const int q = path.q();
    if (prescribedY.size() < p || prescribedEps.size() < q)
        throw std::invalid_argument("prescribed values must cover the model orders");
    if (futureEps.size() < t - s)
        throw std::invalid_argument("future innovations must cover (s, t]");

    // one row pass covers every kernel in the four sums
    const Index lo = s + 1 - q;
    Scalar acc = 0.0;
    GreenRow row(path, t);
    for (Index r = t; r >= lo; --r) {
        while (row.r() > r) row.advance();
        if (r > s) {
            acc += row.value() * path.drift(r);
            acc += row.impulse() * futureEps(r - s - 1);
        } else {
            acc += row.pastInnovation(s) * prescribedEps(s - r);
        }
    }
    for (int m = 1; m <= p; ++m) acc += greenFundamental(path, m, t, s) * prescribedY(m - 1);
    return acc;
}

InnovationParts decomposeInnovations(const CoefficientPath& path, Index t, Index s,
                                     const Vector& eps) {
    const int q = path.q();
    const Index lo = s + 1 - q;
    if (eps.size() < t - lo + 1)
        throw std::invalid_argument("innovations must cover [s+1-q, t]");
    InnovationParts parts;
    GreenRow row(path, t);
    for (Index r = t; r >= lo; --r) {
        while (row.r() > r) row.advance();
        if (r > s)
            parts.unobservable += row.impulse() * eps(r - lo);
        else
            parts.observable += row.pastInnovation(s) * eps(r - lo);
    }
    return parts;
}

Matrix companionProduct(const CoefficientPath& path, Index t, Index s) {
    if (t < s) throw std::invalid_argument("companion product needs t >= s");
    const int p = path.p();
    Matrix prod = Matrix::Identity(p, p);
    for (Index r = s + 1; r <= t; ++r) {
        Matrix comp = Matrix::Zero(p, p);
        for (int m = 1; m <= p; ++m) comp(0, m - 1) = path.phi(m, r);
        for (int i = 1; i < p; ++i) comp(i, i - 1) = 1.0;
        prod = (comp * prod).eval();
    }
    return prod;
}

}  // namespace tvarma
