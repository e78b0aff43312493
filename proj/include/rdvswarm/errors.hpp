#pragma once

#include <stdexcept>
#include <string>

namespace rdvswarm {

/// Unreadable or malformed input (series CSV rows, model files).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A statistic whose defining denominator vanishes (constant series,
/// zero-variance paired differences, negative literal radicand).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An objective declared total returned a non-finite value.
class NonFiniteObjectiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rdvswarm
