#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "super/scalar.hpp"

namespace sup {

// Multivariate polynomial over an ordered variable list. Operations between
// polynomials require identical variable lists; re-embed with with_vars().
class MultiPoly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using TermMap = std::map<Exponents, Scalar>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const Scalar& c, std::vector<std::string> vars);
  static MultiPoly var(const std::string& name, std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t var_index(const std::string& name) const;  // throws if absent

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  std::uint32_t total_degree() const;  // 0 for the zero polynomial
  Scalar coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const Scalar& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly operator*(const MultiPoly& o) const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly scaled(const Scalar& c) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(const std::string& name) const;
  MultiPoly truncated(std::uint32_t max_total_degree) const;
  MultiPoly pow(std::uint32_t e) const;

  // Full evaluation; point must cover every variable.
  Scalar eval(const std::map<std::string, Scalar>& point) const;

  // Substitutes images[i] for vars()[i]; all images share one variable list.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;

  // Coefficient of prod_{(v,e) in fixed} v^e, as a polynomial in the
  // remaining variables.
  MultiPoly extract(const std::map<std::string, std::uint32_t>& fixed) const;

  // Re-embeds into a variable superset (set containment, any order).
  MultiPoly with_vars(const std::vector<std::string>& new_vars) const;

  std::string to_string() const;
  static MultiPoly parse(const std::string& text, std::vector<std::string> vars);

 private:
  void check_vars(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

// Truncated power series: a MultiPoly together with its truncation order.
// Products drop terms above the order.
struct Jet {
  MultiPoly p;
  std::uint32_t order = 0;

  Jet() = default;
  Jet(MultiPoly poly, std::uint32_t ord) : p(poly.truncated(ord)), order(ord) {}

  Jet operator*(const Jet& o) const;
  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet scaled(const Scalar& c) const { return Jet(p.scaled(c), order); }
  bool operator==(const Jet& o) const { return order == o.order && p == o.p; }

  // exp of a jet with zero constant term (finite sum up to the order).
  Jet exp() const;
  // Multiplicative inverse; constant term must be invertible.
  Jet inverse() const;
};

// Set partitions of {1,…,n} (1-based), each partition a list of blocks in a
// canonical order (blocks sorted by least element). n = 0 gives the single
// empty partition. Guarded at n <= 12.
std::vector<std::vector<std::vector<int>>> partitions(int n);

// Composition outer(inner[0],…,inner[k-1]) realized by the Faà di Bruno
// partition sum over set partitions of the target monomial's slot multiset.
// Each inner jet must have zero constant term.
Jet jet_compose(const Jet& outer, const std::vector<Jet>& inner, std::uint32_t order);

// Oracle counterpart: direct polynomial substitution, then truncation.
Jet jet_substitute(const Jet& outer, const std::vector<Jet>& inner, std::uint32_t order);

Rational factorial(std::uint32_t n);

}  // namespace sup
