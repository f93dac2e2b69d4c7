#pragma once

#include <stdexcept>
#include <string>

namespace wptv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A call violated its documented contract (bad argument, invalid index).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a shape do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Phase reconstruction hit a pixel where both channels are exactly zero.
class UndefinedPhaseError : public Error {
 public:
  UndefinedPhaseError(int i, int j)
      : Error("undefined phase: (u_real, u_im) = (0, 0) at pixel (" +
              std::to_string(i) + ", " + std::to_string(j) + ")"),
        i_(i),
        j_(j) {}
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_;
  int j_;
};

/// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wptv
