#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergvar {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Point in the complex parameter space C^m (m = 1 or 2).
using ParamPoint = std::vector<cplx>;

inline double sqr(double x) { return x * x; }
inline double abs2(cplx z) { return std::norm(z); }

/// Raised on bad user input (unknown preset, parameter outside its box, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical precondition fails (indefinite Gram matrix,
/// degenerate denominator, root-find failure, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bergvar
