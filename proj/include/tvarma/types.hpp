#ifndef TVARMA_TYPES_HPP
#define TVARMA_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace tvarma {

using Scalar = double;
using Index = std::int64_t;

using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// |a - b| <= absTol for small values, relative beyond unit magnitude.
inline bool closeTo(Scalar a, Scalar b, Scalar absTol = 1e-9, Scalar relTol = 1e-9) {
    const Scalar diff = std::abs(a - b);
    const Scalar mag = std::max(std::abs(a), std::abs(b));
    if (mag <= 1.0) return diff <= absTol;
    return diff <= relTol * mag;
}

}  // namespace tvarma

#endif
