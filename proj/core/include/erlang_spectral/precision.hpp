#pragma once

#include <boost/multiprecision/float128.hpp>

#include <stdexcept>
#include <string>

namespace erlang_spectral {

// ~33 significant digits (IEEE binary128 in software).
using ext_float = boost::multiprecision::float128;

enum class Precision { Double, Extended, Auto };

// Non-finite inputs, or parameters outside an operation's mathematical domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// The request is valid but beyond what the implementation supports.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bracketed root search saw no sign change.
struct RootNotFound : std::runtime_error {
  double lo, hi;
  RootNotFound(const std::string& what, double lo_, double hi_)
      : std::runtime_error(what), lo(lo_), hi(hi_) {}
};

// Evaluation at (or numerically on top of) a pole.
struct PoleError : std::runtime_error {
  double location;
  PoleError(const std::string& what, double where)
      : std::runtime_error(what), location(where) {}
};

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

}  // namespace erlang_spectral
