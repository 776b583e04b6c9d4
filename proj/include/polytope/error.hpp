#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polytope {

/// Base class for all computational failures in this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbol component lies outside the domain where the f-symbol is real.
class NonRealSymbol : public Error {
public:
    using Error::Error;
};

/// A conversion denominator vanished; the message names the factor.
class DegenerateSymbol : public Error {
public:
    using Error::Error;
};

/// A reflection map or matrix coefficient denominator vanished.
class SingularTransform : public Error {
public:
    explicit SingularTransform(const std::string& what, std::size_t step_index = 0)
        : Error(what), step(step_index) {}

    /// Index of the word letter at which the singularity occurred (0-based).
    std::size_t step;
};

/// The (m,i) pair describes a Euclidean or hyperbolic mosaic with infinite counts.
class InfiniteHoneycomb : public Error {
public:
    using Error::Error;
};

/// Frame construction is only defined for Euclidean and Minkowski signatures.
class UnsupportedSignature : public Error {
public:
    using Error::Error;
};

/// The honeycomb equation has no real solution for the given arguments.
class NoRealSolution : public Error {
public:
    using Error::Error;
};

/// No power of the frame matrix is proportional to the identity within max_q.
class NoFiniteQ : public Error {
public:
    using Error::Error;
};

/// Word text could not be parsed; position is the offending character index.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t pos)
        : Error(what), position(pos) {}

    std::size_t position;
};

}  // namespace polytope
