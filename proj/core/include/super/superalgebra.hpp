#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "super/grassmann.hpp"
#include "super/scalar.hpp"

namespace sup {

using RatVec = std::vector<Rational>;

// Lie superalgebra by structure constants over the ordered basis
// (even names, then odd names). brackets[i][j] is the coefficient vector of
// [b_i, b_j] over the full basis; entries are rational (real form).
struct LieSuperalgebraSpec {
  std::vector<std::string> even_basis;
  std::vector<std::string> odd_basis;
  std::vector<std::vector<RatVec>> brackets;

  std::size_t even_dim() const { return even_basis.size(); }
  std::size_t odd_dim() const { return odd_basis.size(); }
  std::size_t dim() const { return even_basis.size() + odd_basis.size(); }
  Parity basis_parity(std::size_t i) const {
    return i < even_basis.size() ? Parity::Even : Parity::Odd;
  }
  const std::string& name_of(std::size_t i) const {
    return i < even_basis.size() ? even_basis[i] : odd_basis[i - even_basis.size()];
  }
  std::size_t index_of(const std::string& name) const;

  // Structure-level invariants: shapes, super antisymmetry, grading.
  void validate_structure() const;

  RatVec zero_vec() const { return RatVec(dim(), Rational(0)); }
  RatVec basis_vec(std::size_t i) const;
  // [a, b] for plain coefficient vectors.
  RatVec bracket_vec(const RatVec& a, const RatVec& b) const;
};

struct JacobiViolation {
  std::size_t i, j, k;
  RatVec defect;
};

struct JacobiReport {
  bool ok = true;
  std::vector<JacobiViolation> violations;
};

JacobiReport check_super_jacobi(const LieSuperalgebraSpec& spec);

// Element of g (x) Lambda_n over coefficient ring R. Terms are indexed by
// (basis index, Grassmann mask); the parity of a term is |b_i| + |mask|.
template <class R>
class BasicSuperTensor {
 public:
  BasicSuperTensor() : lambda_n_(0), proto_() {}
  BasicSuperTensor(const LieSuperalgebraSpec& spec, int lambda_n, R proto)
      : lambda_n_(lambda_n), dim_(spec.dim()), proto_(RingOps<R>::zero_like(proto)) {
    if (lambda_n < 0 || lambda_n > kMaxGrassmannGenerators)
      throw guard_error("Grassmann generator count out of range");
    parities_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      parities_.push_back(spec.basis_parity(i) == Parity::Odd ? 1 : 0);
  }

  int lambda_n() const { return lambda_n_; }
  std::size_t dim() const { return dim_; }
  const R& proto() const { return proto_; }
  const std::map<std::pair<std::size_t, std::uint64_t>, R>& terms() const { return terms_; }

  void add_term(std::size_t basis, std::uint64_t mask, const R& c) {
    if (basis >= dim_) throw error("basis index out of range");
    if (mask >> lambda_n_) throw error("Grassmann index outside the algebra");
    if (RingOps<R>::is_zero(c)) return;
    auto key = std::make_pair(basis, mask);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second = it->second + c;
      if (RingOps<R>::is_zero(it->second)) terms_.erase(it);
    }
  }

  R coeff(std::size_t basis, std::uint64_t mask) const {
    auto it = terms_.find(std::make_pair(basis, mask));
    return it == terms_.end() ? proto_ : it->second;
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_lambda_even() const {
    for (const auto& [key, c] : terms_)
      if ((parities_[key.first] + __builtin_popcountll(key.second)) % 2 != 0) return false;
    return true;
  }
  bool has_body() const {
    for (const auto& [key, c] : terms_)
      if (key.second == 0) return true;
    return false;
  }
  BasicSuperTensor soul() const {
    BasicSuperTensor r = *this;
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
      if (it->first.second == 0)
        it = r.terms_.erase(it);
      else
        ++it;
    }
    return r;
  }

  BasicSuperTensor operator+(const BasicSuperTensor& o) const {
    check(o);
    BasicSuperTensor r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key.first, key.second, c);
    return r;
  }
  BasicSuperTensor operator-(const BasicSuperTensor& o) const {
    check(o);
    BasicSuperTensor r = *this;
    for (const auto& [key, c] : o.terms_)
      r.add_term(key.first, key.second, RingOps<R>::scale(c, Rational(-1)));
    return r;
  }
  BasicSuperTensor operator-() const { return scaled_rat(Rational(-1)); }
  BasicSuperTensor scaled(const R& c) const {
    BasicSuperTensor r(*this);
    r.terms_.clear();
    for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, t * c);
    return r;
  }
  BasicSuperTensor scaled_rat(const Rational& q) const {
    BasicSuperTensor r(*this);
    r.terms_.clear();
    for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, RingOps<R>::scale(t, q));
    return r;
  }
  bool operator==(const BasicSuperTensor& o) const {
    return lambda_n_ == o.lambda_n_ && dim_ == o.dim_ && terms_ == o.terms_;
  }
  bool operator!=(const BasicSuperTensor& o) const { return !(*this == o); }

  int term_parity(std::size_t basis, std::uint64_t mask) const {
    return (parities_[basis] + __builtin_popcountll(mask)) % 2;
  }
  int basis_parity_bit(std::size_t basis) const { return parities_[basis]; }

 private:
  void check(const BasicSuperTensor& o) const {
    if (lambda_n_ != o.lambda_n_ || dim_ != o.dim_)
      throw error("super tensor contexts differ");
  }

  int lambda_n_ = 0;
  std::size_t dim_ = 0;
  R proto_;
  std::vector<int> parities_;
  std::map<std::pair<std::size_t, std::uint64_t>, R> terms_;
};

using SuperTensor = BasicSuperTensor<Scalar>;

// [v1 (x) l_I1, v2 (x) l_I2]' = (-1)^{|I1||v2|} [v1,v2] (x) l_I1 l_I2.
template <class R>
BasicSuperTensor<R> bracket_extended(const LieSuperalgebraSpec& spec,
                                     const BasicSuperTensor<R>& a,
                                     const BasicSuperTensor<R>& b) {
  if (a.lambda_n() != b.lambda_n() || a.dim() != b.dim() || a.dim() != spec.dim())
    throw error("bracket_extended: mismatched contexts");
  BasicSuperTensor<R> out = a;
  out = out - a;  // zero with the right context
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.second & kb.second) continue;
      const RatVec& sc = spec.brackets[ka.first][kb.first];
      int sign = grassmann_sign(ka.second, kb.second);
      if ((__builtin_popcountll(ka.second) % 2) && a.basis_parity_bit(kb.first)) sign = -sign;
      R c = ca * cb;
      if (sign < 0) c = RingOps<R>::scale(c, Rational(-1));
      std::uint64_t mask = ka.second | kb.second;
      for (std::size_t t = 0; t < sc.size(); ++t) {
        if (sc[t] == 0) continue;
        out.add_term(t, mask, RingOps<R>::scale(c, sc[t]));
      }
    }
  }
  return out;
}

// Dynkin coefficient of a word over {0 = X, 1 = Y}; exposed for the series
// tests. Position 0 is the leftmost letter of the right-nested bracket.
Rational dynkin_word_coefficient(const std::vector<int>& word);

inline constexpr int kBchDepthBound = 12;

// BCH product on Lambda-even nilpotent inputs; exact, layer-terminating.
template <class R>
BasicSuperTensor<R> bch(const BasicSuperTensor<R>& a, const BasicSuperTensor<R>& b,
                        const LieSuperalgebraSpec& spec, int depth_bound = kBchDepthBound) {
  if (!a.is_lambda_even() || !b.is_lambda_even())
    throw guard_error("bch requires Lambda-even arguments");
  BasicSuperTensor<R> zero = a - a;
  BasicSuperTensor<R> acc = zero;
  for (int m = 1; m <= depth_bound; ++m) {
    bool layer_alive = false;
    BasicSuperTensor<R> layer = zero;
    // Right-nested brackets of all 2^m words, suffix by suffix.
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << m); ++w) {
      BasicSuperTensor<R> nested = ((w >> (m - 1)) & 1) ? b : a;
      for (int pos = m - 2; pos >= 0; --pos)
        nested = bracket_extended(spec, ((w >> pos) & 1) ? b : a, nested);
      if (nested.is_zero()) continue;
      layer_alive = true;
      std::vector<int> word(static_cast<std::size_t>(m));
      for (int pos = 0; pos < m; ++pos) word[static_cast<std::size_t>(pos)] = (w >> pos) & 1;
      Rational c = dynkin_word_coefficient(word);
      if (c != 0) layer = layer + nested.scaled_rat(c);
    }
    if (m > 1 && !layer_alive) return acc;  // all longer brackets vanish too
    acc = acc + layer;
  }
  // One more layer probe: if every bracket of length depth_bound+1 vanishes we
  // actually terminated at the bound; otherwise refuse.
  for (std::uint64_t w = 0; w < (std::uint64_t(1) << (depth_bound + 1)); ++w) {
    BasicSuperTensor<R> nested = ((w >> depth_bound) & 1) ? b : a;
    for (int pos = depth_bound - 1; pos >= 0; --pos)
      nested = bracket_extended(spec, ((w >> pos) & 1) ? b : a, nested);
    if (!nested.is_zero())
      throw guard_error("bch: not nilpotent at depth " + std::to_string(depth_bound));
  }
  return acc;
}

struct C1C2Tables {
  // c1[i][j]: coefficients over the odd basis of c1(even_i, odd_j).
  std::vector<std::vector<RatVec>> c1;
  // c2[i][j]: coefficients over the even basis of c2(odd_i, odd_j).
  std::vector<std::vector<RatVec>> c2;
};

LieSuperalgebraSpec reconstruct_bracket(const std::vector<std::string>& even_basis,
                                        const std::vector<std::string>& odd_basis,
                                        const std::vector<std::vector<RatVec>>& c0,
                                        const std::vector<std::vector<RatVec>>& c1,
                                        const std::vector<std::vector<RatVec>>& c2);

using BracketOracle =
    std::function<SuperTensor(const SuperTensor&, const SuperTensor&)>;

// Reads c1 off [e_i, o_j l1] at l1 and c2 off [o_i l1, o_j l2] at l1 l2.
C1C2Tables extract_c1_c2(const LieSuperalgebraSpec& spec, const BracketOracle& oracle);

// Smallest c with vanishing (c+1)-fold brackets via the lower central series;
// empty if the bound is hit.
std::optional<int> nilpotency_class(const LieSuperalgebraSpec& spec, int bound = 12);

// Fixtures used across tests and docs.
LieSuperalgebraSpec make_abelian(std::size_t p, std::size_t q);
LieSuperalgebraSpec make_clifford1();   // even z central, odd x, [x,x] = z
LieSuperalgebraSpec make_scaling11();   // even a, odd x, [a,x] = x
LieSuperalgebraSpec make_sl2();         // e, f, h (not nilpotent)
LieSuperalgebraSpec make_heisenberg3(); // even p, q, z with [p,q] = z

std::string tensor_to_string(const SuperTensor& a, const LieSuperalgebraSpec& spec);

}  // namespace sup
