#pragma once

#include <stdexcept>
#include <string>

namespace plab {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched or unsupported dimensions.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Input lacks required structure (Hermitian, traceless, orthogonal, ...).
class StructureError : public Error {
public:
  using Error::Error;
};

// A numeric result left its mathematically guaranteed range.
class NumericalError : public Error {
public:
  using Error::Error;
};

// Invalid parameter (norm descriptor, dimension range, sample counts).
class ParameterError : public Error {
public:
  using Error::Error;
};

// A table-backed map was queried at a point it does not contain.
class MissingSample : public Error {
public:
  using Error::Error;
};

// Canonicalization rejected the map: it does not satisfy the property
// the requested canonical form is guaranteed for.
class NotAPreserver : public Error {
public:
  using Error::Error;
};

// A checked precondition of an operation failed.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Malformed map-specification document.
class SpecError : public Error {
public:
  using Error::Error;
};

// A situation the implementation considers impossible.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace plab
