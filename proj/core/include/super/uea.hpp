#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "super/matrix.hpp"
#include "super/superalgebra.hpp"

namespace sup {

// PBW monomial: exponents over the ordered basis (even first, then odd);
// odd exponents are 0 or 1.
using PBWMonomial = std::vector<std::uint32_t>;

std::uint32_t mono_degree(const PBWMonomial& m);

// Element of U(g_C) in PBW normal form.
class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(const LieSuperalgebraSpec& spec);

  static UEAElement unit(const LieSuperalgebraSpec& spec);
  static UEAElement generator(const LieSuperalgebraSpec& spec, std::size_t i);

  std::size_t dim() const { return parities_.size(); }
  std::size_t even_dim() const { return even_dim_; }
  const std::map<PBWMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool was_truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  void add_term(const PBWMonomial& m, const Scalar& c);
  Scalar coeff(const PBWMonomial& m) const;

  UEAElement operator+(const UEAElement& o) const;
  UEAElement operator-(const UEAElement& o) const;
  UEAElement operator-() const;
  UEAElement scaled(const Scalar& c) const;
  bool operator==(const UEAElement& o) const {
    return parities_ == o.parities_ && terms_ == o.terms_;
  }
  bool operator!=(const UEAElement& o) const { return !(*this == o); }

  std::uint32_t degree() const;
  UEAElement truncated_to(std::uint32_t max_degree) const;

  int term_parity(const PBWMonomial& m) const;
  bool is_parity_homogeneous() const;
  Parity parity() const;  // throws on mixed parity
  UEAElement parity_part(Parity p) const;

  // Ascending letter sequence of a monomial (basis indices with repetition).
  std::vector<std::size_t> mono_word(const PBWMonomial& m) const;

 private:
  void check(const UEAElement& o) const {
    if (parities_ != o.parities_) throw error("enveloping-algebra contexts differ");
  }

  std::size_t even_dim_ = 0;
  std::vector<int> parities_;
  std::map<PBWMonomial, Scalar> terms_;
  bool truncated_ = false;
};

enum class RewriteStrategy { Leftmost, Rightmost };

// Normal form of a word of generators (indices into the spec basis) under
// b_j b_i -> (-1)^{|i||j|} b_i b_j + [b_j, b_i]  (j > i)
// b_i b_i -> 1/2 [b_i, b_i]                      (i odd).
UEAElement pbw_normalize_word(const LieSuperalgebraSpec& spec,
                              const std::vector<std::size_t>& word,
                              RewriteStrategy strategy = RewriteStrategy::Leftmost);

UEAElement uea_mul(const LieSuperalgebraSpec& spec, const UEAElement& a, const UEAElement& b,
                   RewriteStrategy strategy = RewriteStrategy::Leftmost);

// Antilinear anti-automorphism with x* = -x (even), x* = -i x (odd).
UEAElement uea_star(const LieSuperalgebraSpec& spec, const UEAElement& d);

// Multiplicative extension of an exact parity-preserving linear map on g
// (columns = images of basis vectors), renormalized to PBW form.
UEAElement ad_apply_uea(const LieSuperalgebraSpec& spec, const ScalarMat& map_on_g,
                        const UEAElement& d);

// Monomial grammar: names separated by spaces, even powers caret-denoted,
// e.g. "z^2 x"; "1" is the empty monomial.
// All PBW monomials of total degree <= cap, sorted by degree then by
// exponent vector.
std::vector<PBWMonomial> enumerate_monomials(const LieSuperalgebraSpec& spec, std::uint32_t cap);

std::string mono_to_string(const LieSuperalgebraSpec& spec, const PBWMonomial& m);
// Parses a word (repetition allowed, any order); callers normalize.
std::vector<std::size_t> word_from_string(const LieSuperalgebraSpec& spec,
                                          const std::string& text);
// Strict parse of an already-normal monomial.
PBWMonomial mono_from_string(const LieSuperalgebraSpec& spec, const std::string& text);

std::string uea_to_string(const LieSuperalgebraSpec& spec, const UEAElement& d);

}  // namespace sup
