#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccspace {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sizes of two objects that must agree do not.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside its documented domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A co-membership vector violates a triangle inequality.
class InvalidComembershipError : public Error {
public:
    InvalidComembershipError(const std::string& what, std::array<std::size_t, 3> triple)
        : Error(what), triple_(triple) {}

    /// The violated triple (i, j, r), i < j < r, 0-based.
    const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

private:
    std::array<std::size_t, 3> triple_;
};

/// A search was stopped by its time limit before proving optimality.
class IncompleteSearchError : public Error {
public:
    IncompleteSearchError(const std::string& what, double best_upper, double best_lower)
        : Error(what), best_upper_(best_upper), best_lower_(best_lower) {}

    /// Imbalance of the best partition found before the stop.
    double best_upper() const noexcept { return best_upper_; }
    /// Lower bound proven before the stop.
    double best_lower() const noexcept { return best_lower_; }

private:
    double best_upper_;
    double best_lower_;
};

/// Input exceeds a hard resource guard (e.g. exhaustive search on a large graph).
class GuardError : public Error {
public:
    using Error::Error;
};

/// An independent recomputation disagreed with a stored result.
class CrossCheckError : public Error {
public:
    using Error::Error;
};

}  // namespace ccspace
