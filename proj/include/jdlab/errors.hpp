#pragma once

#include <stdexcept>
#include <string>

namespace jdlab {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not fit together (non-square, size mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be unitary failed the check at the requested tolerance.
class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// Two diagonal indices are not distinguished by any matrix of a DiagonalSet,
/// so the first-order coefficients have a zero denominator.
class DegenerateSpectraError : public Error {
 public:
  using Error::Error;
};

/// Input to the transvection factorization is not in SL(n) within tolerance.
class DeterminantError : public Error {
 public:
  using Error::Error;
};

/// Elimination met a column with no usable pivot.
class PivotError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace jdlab
