#pragma once

#include <cstdint>
#include <random>

#include "super/error.hpp"
#include "super/scalar.hpp"

namespace sup {

// Deterministic across platforms: raw mt19937_64 draws reduced by modulo
// (std distributions are implementation-defined and would break golden files).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }
  long next_int(long lo, long hi) {
    if (hi < lo) throw error("empty integer range");
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  Rational next_rational(long max_num = 3, long max_den = 3) {
    Rational r(next_int(-max_num, max_num), next_int(1, max_den));
    r.canonicalize();
    return r;
  }
  Rational next_positive_rational(long max_num = 3, long max_den = 3) {
    Rational r(next_int(1, max_num), next_int(1, max_den));
    r.canonicalize();
    return r;
  }
  Scalar next_gaussian(long max_num = 3, long max_den = 2) {
    return Scalar(next_rational(max_num, max_den), next_rational(max_num, max_den));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sup
