#ifndef GABORLAT_ERRORS_HPP
#define GABORLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gaborlat {

/// Base class for all library errors so callers can catch in one place.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Basis singular / invariants violated.
class InvalidLatticeError : public Error {
public:
    using Error::Error;
};

/// Operation requested in an unsupported dimension (e.g. deep holes above 2-D).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Unknown named lattice or missing theta table.
class CatalogError : public Error {
public:
    using Error::Error;
};

/// Point / radius caps exceeded; message names the cap and the need.
class ResourceCapError : public Error {
public:
    using Error::Error;
};

/// Eigensolver failure, CG non-convergence, internal consistency breach.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Lattice does not generate a frame (density <= 1 or refined A <= 0).
class NotAFrameError : public Error {
public:
    using Error::Error;
};

/// Malformed descriptor / CSV input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Argument outside the documented domain (decay at grid edges, etc.).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace gaborlat

#endif // GABORLAT_ERRORS_HPP
