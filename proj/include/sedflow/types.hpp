#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace sedflow {

inline constexpr std::size_t kNumVars = 5;

// Component order of the conserved vector W = (h, hu, hv, hC, Zb).
enum Var : std::size_t { kH = 0, kHU = 1, kHV = 2, kHC = 3, kZB = 4 };

using Vec5 = std::array<double, kNumVars>;
using ConservedState = Vec5;

enum class Axis { x, y };

inline Vec5 operator+(const Vec5& a, const Vec5& b)
{
  Vec5 r;
  for (std::size_t m = 0; m < kNumVars; ++m) r[m] = a[m] + b[m];
  return r;
}

inline Vec5 operator-(const Vec5& a, const Vec5& b)
{
  Vec5 r;
  for (std::size_t m = 0; m < kNumVars; ++m) r[m] = a[m] - b[m];
  return r;
}

inline Vec5 operator*(double s, const Vec5& a)
{
  Vec5 r;
  for (std::size_t m = 0; m < kNumVars; ++m) r[m] = s * a[m];
  return r;
}

// Thrown for invalid user configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the solver produces NaN/Inf or exceeds its step budget (CLI exit code 2).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated function precondition (programming error, not user input).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sedflow
