#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

#include "super/error.hpp"

namespace sup {

using Rational = mpq_class;

// "p/q" or "p"; lowest terms, positive denominator after canonicalization.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);          // "p" or "p/q"
std::string rational_to_fraction_string(const Rational& r); // always "p/q"
Rational rational_pow(const Rational& base, unsigned long e);
double rational_to_double(const Rational& r);

// Scalar tower: exact Gaussian rationals or binary64 complex numbers.
// Arithmetic never mixes the two kinds silently; promotion to float is the
// explicit to_float() call.
class Scalar {
 public:
  enum class Kind : std::uint8_t { Exact, Float };

  Scalar() : kind_(Kind::Exact), re_(0), im_(0), f_(0.0, 0.0) {}
  Scalar(long v) : kind_(Kind::Exact), re_(v), im_(0), f_(0.0, 0.0) {}
  Scalar(const Rational& re) : kind_(Kind::Exact), re_(re), im_(0), f_(0.0, 0.0) {}
  Scalar(const Rational& re, const Rational& im)
      : kind_(Kind::Exact), re_(re), im_(im), f_(0.0, 0.0) {}

  static Scalar flt(std::complex<double> z);
  static Scalar flt(double re, double im = 0.0) { return flt(std::complex<double>(re, im)); }
  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_float() const { return kind_ == Kind::Float; }

  const Rational& exact_re() const;
  const Rational& exact_im() const;
  std::complex<double> float_value() const;

  // Explicit promotion; exact values convert with rounding to binary64.
  Scalar to_float() const;
  std::complex<double> to_complex() const;  // works for both kinds

  bool is_zero() const;
  bool is_real() const;

  Scalar operator-() const;
  Scalar conj() const;
  Scalar inv() const;  // throws error on zero
  Scalar abs2() const; // |z|^2, same kind

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Exact comparison; both operands must share a kind.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar pow(unsigned long e) const;

  // Compact string form: "0", "1/2", "-3", "2i", "1+2i", "3/2-1/2i".
  // Float scalars render as "(re,im)" with round-trip precision.
  std::string to_string() const;

  // Parses the compact exact form above. Strings never denote floats.
  static Scalar parse(const std::string& s);

 private:
  void check_same_kind(const Scalar& o, const char* op) const;

  Kind kind_;
  Rational re_, im_;
  std::complex<double> f_;
};

Scalar operator*(const Rational& r, const Scalar& s);

// |a - b| <= tol after promoting both to complex; use for float comparisons.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);
double abs_value(const Scalar& s);

}  // namespace sup
