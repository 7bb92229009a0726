#ifndef TVARMA_GREEN_HPP
#define TVARMA_GREEN_HPP

#include <vector>

#include "tvarma/coefficient_path.hpp"
#include "tvarma/types.hpp"

namespace tvarma {

// Principal Green function xi(t,s) of the AR side: xi(s,s) = 1, xi(t,s) = 0
// for t < s, and the homogeneous recursion in t above that. Equal to the
// determinant of the banded lower Hessenberg principal matrix.
Scalar green(const CoefficientPath& path, Index t, Index s);

// xi(t,u) for u = lo..t as a vector (index u - lo). Uses the recursion in the
// second argument obtained by expanding the Hessenbergian along its first
// column: xi(t,u) = sum_m phi_m(u+m) xi(t,u+m).
Vector greenRowSpan(const CoefficientPath& path, Index t, Index lo);

// m-th fundamental solution: unit initial value in position m at time s+1-m.
Scalar greenFundamental(const CoefficientPath& path, int m, Index t, Index s);

// MA-augmented kernel xi_q(t,r): weight of the unobservable innovation at r.
Scalar impulseWeight(const CoefficientPath& path, Index t, Index r);

// xi_{s,q}(t,r): weight of an observable innovation at r <= s. Lags below 1
// never contribute; the sum is empty for r < s+1-q or q = 0.
Scalar pastInnovationWeight(const CoefficientPath& path, Index s, Index t, Index r);

// MA-side Green function theta(t,s) built from the -theta_l entries.
Scalar maGreen(const CoefficientPath& path, Index t, Index s);

// theta_p(t,r): weight of the observation at r in the innovation recovery.
Scalar inversionWeight(const CoefficientPath& path, Index t, Index r);

// Streams a fixed-t row of Green values while r walks toward the remote past,
// keeping enough of the window to evaluate the MA-augmented kernels. The MA
// side streams theta(t,r) by the same mechanism on the mirrored coefficients.
class GreenRow {
public:
    enum class Side { Ar, Ma };
    GreenRow(const CoefficientPath& path, Index t, Side side = Side::Ar);

    Index r() const { return r_; }
    Scalar value() const { return at(r_); }
    // xi(t,u) for u >= r of the current window (values above t are 0 / 1 at t).
    Scalar at(Index u) const;
    void advance();

    // xi_q(t,r) at the current r (AR side only).
    Scalar impulse() const;
    // xi_{s,q}(t,r) at the current r (AR side only).
    Scalar pastInnovation(Index s) const;
    // theta_p(t,r) at the current r (MA side only).
    Scalar inversion() const;

private:
    const CoefficientPath* path_;
    Side side_;
    Index t_;
    Index r_;
    int stepLags_;
    int window_;
    std::vector<Scalar> buf_;  // buf_[i] = xi(t, r_ + i), i = 0..window_-1
};

// Memoized triangular table of xi(t,s) for base <= s <= t <= horizon, built
// eagerly column by column (fixed s) with the homogeneous recursion.
class GreenTable {
public:
    GreenTable(CoefficientPath path, Index base, Index horizon);

    Index base() const { return base_; }
    Index horizon() const { return horizon_; }
    const CoefficientPath& path() const { return path_; }

    Scalar xi(Index t, Index s) const;
    // The stored column {xi(t,s)}_t for t = s..horizon.
    const Vector& column(Index s) const;

private:
    CoefficientPath path_;
    Index base_;
    Index horizon_;
    std::vector<Vector> cols_;
};

// Independent oracle: evaluates xi(t,s) as the determinant of the explicitly
// assembled principal matrix, by cofactor expansion up to order 10 and
// fraction-free (Bareiss) elimination up to the cap. Never uses the recursion.
Scalar greenByDeterminant(const CoefficientPath& path, Index t, Index s, int cap = 14);

// Same oracle on the MA-side principal matrix.
Scalar maGreenByDeterminant(const CoefficientPath& path, Index t, Index s, int cap = 14);

}  // namespace tvarma

#endif
