#include "tvarma/green.hpp"

#include <algorithm>
#include <stdexcept>

namespace tvarma {

Scalar green(const CoefficientPath& path, Index t, Index s) {
    if (t < s) return 0.0;
    if (t == s) return 1.0;
    const int p = path.p();
    if (p == 0) return 0.0;
    // column recursion in t, seeded with the initial values at s
    std::vector<Scalar> buf(static_cast<std::size_t>(p), 0.0);
    buf[0] = 1.0;  // xi(s, s); buf[i] = xi(u - 1 - i, s)
    Scalar cur = 0.0;
    for (Index u = s + 1; u <= t; ++u) {
        cur = 0.0;
        for (int m = 1; m <= p; ++m) cur += path.phi(m, u) * buf[static_cast<std::size_t>(m - 1)];
        for (int i = p - 1; i > 0; --i) buf[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i - 1)];
        buf[0] = cur;
    }
    return cur;
}

Vector greenRowSpan(const CoefficientPath& path, Index t, Index lo) {
    if (lo > t) return Vector();
    Vector row(t - lo + 1);
    GreenRow it(path, t);
    row(t - lo) = it.value();
    while (it.r() > lo) {
        it.advance();
        row(it.r() - lo) = it.value();
    }
    return row;
}

namespace {

Scalar xiAt(const Vector& row, Index lo, Index t, Index u) {
    if (u > t) return 0.0;
    if (u == t) return 1.0;
    return row(u - lo);
}

}  // namespace

Scalar greenFundamental(const CoefficientPath& path, int m, Index t, Index s) {
    const int p = path.p();
    if (m < 1 || m > p) throw std::out_of_range("fundamental solution index out of range");
    // prescribed values: 1 at position s+1-m, 0 at the other initial positions
    if (t <= s) return t == s + 1 - m ? 1.0 : 0.0;
    const Index lo = s + 1;
    const Vector row = greenRowSpan(path, t, lo);
    Scalar acc = 0.0;
    for (int r = 1; r <= p + 1 - m; ++r)
        acc += path.phi(m - 1 + r, s + r) * xiAt(row, lo, t, s + r);
    return acc;
}

Scalar impulseWeight(const CoefficientPath& path, Index t, Index r) {
    const Index lo = std::min(t, r);
    const Vector row = greenRowSpan(path, t, lo);
    Scalar acc = xiAt(row, lo, t, r);
    for (int l = 1; l <= path.q(); ++l) acc += xiAt(row, lo, t, r + l) * path.theta(l, r + l);
    return acc;
}

Scalar pastInnovationWeight(const CoefficientPath& path, Index s, Index t, Index r) {
    const int q = path.q();
    const int lFrom = static_cast<int>(std::max<Index>(1, s + 1 - r));
    if (lFrom > q) return 0.0;
    const Index lo = std::min(t, r + lFrom);
    const Vector row = greenRowSpan(path, t, lo);
    Scalar acc = 0.0;
    for (int l = lFrom; l <= q; ++l) acc += xiAt(row, lo, t, r + l) * path.theta(l, r + l);
    return acc;
}

Scalar maGreen(const CoefficientPath& path, Index t, Index s) {
    if (t < s) return 0.0;
    if (t == s) return 1.0;
    const int q = path.q();
    if (q == 0) return 0.0;
    std::vector<Scalar> buf(static_cast<std::size_t>(q), 0.0);
    buf[0] = 1.0;
    Scalar cur = 0.0;
    for (Index u = s + 1; u <= t; ++u) {
        cur = 0.0;
        for (int l = 1; l <= q; ++l) cur += -path.theta(l, u) * buf[static_cast<std::size_t>(l - 1)];
        for (int i = q - 1; i > 0; --i) buf[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i - 1)];
        buf[0] = cur;
    }
    return cur;
}

Scalar inversionWeight(const CoefficientPath& path, Index t, Index r) {
    GreenRow it(path, t, GreenRow::Side::Ma);
    while (it.r() > r) it.advance();
    return it.inversion();
}

GreenRow::GreenRow(const CoefficientPath& path, Index t, Side side)
    : path_(&path), side_(side), t_(t), r_(t) {
    stepLags_ = side == Side::Ar ? path.p() : path.q();
    const int keep = std::max(path.p(), path.q());
    window_ = std::max(stepLags_, keep) + 1;
    buf_.assign(static_cast<std::size_t>(window_), 0.0);
    buf_[0] = 1.0;
}

Scalar GreenRow::at(Index u) const {
    if (u > t_) return 0.0;
    const Index off = u - r_;
    if (off < 0 || off >= window_) throw std::out_of_range("row window exceeded");
    return buf_[static_cast<std::size_t>(off)];
}

void GreenRow::advance() {
    const Index rNew = r_ - 1;
    Scalar val = 0.0;
    for (int m = 1; m <= stepLags_; ++m) {
        const Index u = rNew + m;
        if (u > t_) break;
        const Scalar w = side_ == Side::Ar ? path_->phi(m, u) : -path_->theta(m, u);
        val += w * buf_[static_cast<std::size_t>(u - r_)];
    }
    for (int i = window_ - 1; i > 0; --i) buf_[static_cast<std::size_t>(i)] = buf_[static_cast<std::size_t>(i - 1)];
    buf_[0] = val;
    r_ = rNew;
}

Scalar GreenRow::impulse() const {
    Scalar acc = value();
    for (int l = 1; l <= path_->q(); ++l) {
        const Index u = r_ + l;
        if (u > t_) break;
        acc += at(u) * path_->theta(l, u);
    }
    return acc;
}

Scalar GreenRow::pastInnovation(Index s) const {
    const int q = path_->q();
    Scalar acc = 0.0;
    for (int l = static_cast<int>(std::max<Index>(1, s + 1 - r_)); l <= q; ++l) {
        const Index u = r_ + l;
        if (u > t_) break;
        acc += at(u) * path_->theta(l, u);
    }
    return acc;
}

Scalar GreenRow::inversion() const {
    Scalar acc = value();
    for (int m = 1; m <= path_->p(); ++m) {
        const Index u = r_ + m;
        if (u > t_) break;
        acc -= at(u) * path_->phi(m, u);
    }
    return acc;
}

GreenTable::GreenTable(CoefficientPath path, Index base, Index horizon)
    : path_(std::move(path)), base_(base), horizon_(horizon) {
    if (horizon_ < base_) throw std::invalid_argument("horizon must not precede base");
    cols_.reserve(static_cast<std::size_t>(horizon_ - base_ + 1));
    const int p = path_.p();
    for (Index s = base_; s <= horizon_; ++s) {
        Vector col(horizon_ - s + 1);
        col(0) = 1.0;
        for (Index t = s + 1; t <= horizon_; ++t) {
            Scalar v = 0.0;
            for (int m = 1; m <= p; ++m) {
                const Index tm = t - m;
                if (tm < s) break;  // zero initial values below s
                v += path_.phi(m, t) * col(tm - s);
            }
            col(t - s) = v;
        }
        cols_.push_back(std::move(col));
    }
}

Scalar GreenTable::xi(Index t, Index s) const {
    if (t < s) return 0.0;
    if (t == s) return 1.0;
    if (s < base_ || t > horizon_) throw std::out_of_range("pair outside green table window");
    return cols_[static_cast<std::size_t>(s - base_)](t - s);
}

const Vector& GreenTable::column(Index s) const {
    if (s < base_ || s > horizon_) throw std::out_of_range("column outside green table window");
    return cols_[static_cast<std::size_t>(s - base_)];
}

namespace {

// Cofactor expansion along successive columns with zero pruning; the banded
// structure keeps the branching narrow.
Scalar cofactorDet(const Matrix& m, std::vector<char>& rowUsed, int col) {
    const int n = static_cast<int>(m.rows());
    if (col == n) return 1.0;
    Scalar acc = 0.0;
    int pos = 0;  // rank of the row among the unused ones
    for (int i = 0; i < n; ++i) {
        if (rowUsed[static_cast<std::size_t>(i)]) continue;
        const Scalar v = m(i, col);
        if (v != 0.0) {
            rowUsed[static_cast<std::size_t>(i)] = 1;
            const Scalar sub = cofactorDet(m, rowUsed, col + 1);
            rowUsed[static_cast<std::size_t>(i)] = 0;
            acc += ((pos % 2 == 0) ? v : -v) * sub;
        }
        ++pos;
    }
    return acc;
}

// Bareiss fraction-free elimination.
Scalar bareissDet(Matrix m) {
    const int n = static_cast<int>(m.rows());
    Scalar prev = 1.0;
    Scalar sign = 1.0;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0.0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0.0) { swap = i; break; }
            if (swap < 0) return 0.0;
            m.row(k).swap(m.row(swap));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Matrix principalMatrix(const CoefficientPath& path, Index t, Index s, bool maSide) {
    const Index k = t - s;
    Matrix m = Matrix::Zero(k, k);
    const int lags = maSide ? path.q() : path.p();
    for (Index i = 0; i < k; ++i) {
        if (i + 1 < k) m(i, i + 1) = -1.0;
        const Index time = s + 1 + i;
        for (Index j = std::max<Index>(0, i - lags + 1); j <= i; ++j) {
            const Index lag = i - j + 1;
            m(i, j) = maSide ? -path.theta(static_cast<int>(lag), time)
                             : path.phi(static_cast<int>(lag), time);
        }
    }
    return m;
}

Scalar determinantOracle(const CoefficientPath& path, Index t, Index s, int cap, bool maSide) {
    if (t <= s) throw std::invalid_argument("determinant oracle needs t > s");
    const Index k = t - s;
    if (k > cap) throw std::invalid_argument("determinant oracle horizon cap exceeded");
    const Matrix m = principalMatrix(path, t, s, maSide);
    if (k <= 10) {
        std::vector<char> used(static_cast<std::size_t>(k), 0);
        return cofactorDet(m, used, 0);
    }
    return bareissDet(m);
}

}  // namespace

Scalar greenByDeterminant(const CoefficientPath& path, Index t, Index s, int cap) {
    return determinantOracle(path, t, s, cap, false);
}

Scalar maGreenByDeterminant(const CoefficientPath& path, Index t, Index s, int cap) {
    return determinantOracle(path, t, s, cap, true);
}

}  // namespace tvarma
