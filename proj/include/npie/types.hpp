#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace npie {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Lebesgue exponent of the norm a discretization preserves. Only the three
/// exponents the experiments use are representable.
enum class Norm { L1, L2, Inf };

/// 1/p, with the convention 1/inf = 0.
constexpr double inverse_exponent(Norm p) {
  switch (p) {
    case Norm::L1: return 1.0;
    case Norm::L2: return 0.5;
    case Norm::Inf: return 0.0;
  }
  return 0.0;
}

constexpr double exponent_value(Norm p) {
  switch (p) {
    case Norm::L1: return 1.0;
    case Norm::L2: return 2.0;
    case Norm::Inf: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

/// Which second-kind equation is discretized: the density sigma = u'' or u itself.
enum class Formulation { Sigma, U };

std::string to_string(Norm p);
std::string to_string(Formulation f);
Norm parse_norm(std::string_view text);
Formulation parse_formulation(std::string_view text);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class RefinementError : public Error {
 public:
  using Error::Error;
};

}  // namespace npie
