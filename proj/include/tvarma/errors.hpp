#ifndef TVARMA_ERRORS_HPP
#define TVARMA_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "tvarma/types.hpp"

namespace tvarma {

// A truncated series whose partial sums keep growing at the term cap.
class NonSummableError : public std::runtime_error {
public:
    explicit NonSummableError(const std::string& what) : std::runtime_error(what) {}
};

class NotInvertibleError : public std::runtime_error {
public:
    explicit NotInvertibleError(const std::string& what) : std::runtime_error(what) {}
};

// A moment formula was asked to run outside its validity condition.
class ConditionViolatedError : public std::runtime_error {
public:
    explicit ConditionViolatedError(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientHistoryError : public std::runtime_error {
public:
    InsufficientHistoryError(const std::string& what, Index required)
        : std::runtime_error(what), requiredLength(required) {}
    Index requiredLength = 0;
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tvarma

#endif
