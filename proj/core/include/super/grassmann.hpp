#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "super/error.hpp"
#include "super/matrix.hpp"
#include "super/scalar.hpp"

namespace sup {

inline constexpr int kMaxGrassmannGenerators = 16;

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity parity_add(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

// Sign of lambda_I * lambda_J for disjoint bit masks: parity of the number of
// pairs (i in I, j in J) with i > j.
inline int grassmann_sign(std::uint64_t left, std::uint64_t right) {
  int inv = 0;
  for (std::uint64_t j = right; j != 0; j &= j - 1) {
    int bit = __builtin_ctzll(j);
    inv += __builtin_popcountll(left >> (bit + 1));
  }
  return (inv % 2 == 0) ? 1 : -1;
}

std::uint64_t tuple_to_mask(const std::vector<int>& tuple, int n);
std::vector<int> mask_to_tuple(std::uint64_t mask);

// Grassmann algebra element over a coefficient ring R (Scalar for concrete
// values, MultiPoly for symbolic jets). Masks index lambda_{i+1} by bit i.
template <class R>
class BasicGrassmann {
 public:
  BasicGrassmann() : n_(0), proto_() {}
  BasicGrassmann(int n, R proto) : n_(n), proto_(RingOps<R>::zero_like(proto)) {
    if (n < 0 || n > kMaxGrassmannGenerators)
      throw guard_error("Grassmann generator count out of range");
  }

  static BasicGrassmann unit(int n, const R& proto) {
    BasicGrassmann g(n, proto);
    g.add_term(0, RingOps<R>::one_like(proto));
    return g;
  }
  static BasicGrassmann generator(int n, int i, const R& proto) {
    if (i < 1 || i > n) throw error("Grassmann generator index out of range");
    BasicGrassmann g(n, proto);
    g.add_term(std::uint64_t(1) << (i - 1), RingOps<R>::one_like(proto));
    return g;
  }
  static BasicGrassmann monomial(int n, std::uint64_t mask, const R& c, const R& proto) {
    BasicGrassmann g(n, proto);
    g.add_term(mask, c);
    return g;
  }

  int n() const { return n_; }
  const R& proto() const { return proto_; }
  const std::map<std::uint64_t, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::uint64_t mask, const R& c) {
    if (mask >> n_) throw error("Grassmann index outside the algebra");
    if (RingOps<R>::is_zero(c)) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
      terms_.emplace(mask, c);
    } else {
      it->second = it->second + c;
      if (RingOps<R>::is_zero(it->second)) terms_.erase(it);
    }
  }

  R coeff(std::uint64_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? proto_ : it->second;
  }

  BasicGrassmann operator+(const BasicGrassmann& o) const {
    check(o);
    BasicGrassmann r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  BasicGrassmann operator-(const BasicGrassmann& o) const {
    check(o);
    BasicGrassmann r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, RingOps<R>::scale(c, Rational(-1)));
    return r;
  }
  BasicGrassmann operator-() const {
    BasicGrassmann r(n_, proto_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, RingOps<R>::scale(c, Rational(-1)));
    return r;
  }
  BasicGrassmann operator*(const BasicGrassmann& o) const {
    check(o);
    BasicGrassmann r(n_, proto_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        int sg = grassmann_sign(ma, mb);
        R c = ca * cb;
        r.add_term(ma | mb, sg == 1 ? c : RingOps<R>::scale(c, Rational(-1)));
      }
    return r;
  }
  BasicGrassmann scaled(const R& c) const {
    BasicGrassmann r(n_, proto_);
    for (const auto& [m, t] : terms_) r.add_term(m, t * c);
    return r;
  }
  bool operator==(const BasicGrassmann& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const BasicGrassmann& o) const { return !(*this == o); }

  // All stored terms have the given parity.
  bool is_even() const { return pure(0); }
  bool is_odd() const { return pure(1); }
  bool is_homogeneous() const { return is_even() || is_odd(); }
  Parity parity() const {
    if (is_even()) return Parity::Even;
    if (is_odd()) return Parity::Odd;
    throw error("Grassmann element is not parity homogeneous");
  }

  BasicGrassmann even_part() const { return filtered(0); }
  BasicGrassmann odd_part() const { return filtered(1); }
  R body() const { return coeff(0); }
  BasicGrassmann soul() const {
    BasicGrassmann r = *this;
    r.terms_.erase(0);
    return r;
  }

 private:
  bool pure(int p) const {
    for (const auto& [m, c] : terms_)
      if (__builtin_popcountll(m) % 2 != p) return false;
    return true;
  }
  BasicGrassmann filtered(int p) const {
    BasicGrassmann r(n_, proto_);
    for (const auto& [m, c] : terms_)
      if (__builtin_popcountll(m) % 2 == p) r.terms_.emplace(m, c);
    return r;
  }
  void check(const BasicGrassmann& o) const {
    if (n_ != o.n_) throw error("Grassmann generator counts differ");
  }

  int n_;
  R proto_;
  std::map<std::uint64_t, R> terms_;
};

using GrassmannElement = BasicGrassmann<Scalar>;

// Unital algebra morphism between Grassmann algebras, fixed by odd generator
// images (odd images make the relations hold automatically).
template <class R>
struct BasicGrMorphism {
  int source_n = 0;
  int target_n = 0;
  std::vector<BasicGrassmann<R>> images;

  void validate() const {
    if (static_cast<int>(images.size()) != source_n)
      throw error("morphism needs one image per generator");
    for (const auto& im : images) {
      if (im.n() != target_n) throw error("morphism image in wrong algebra");
      if (!im.is_odd()) throw error("morphism image must be odd");
    }
  }
};

using GrMorphism = BasicGrMorphism<Scalar>;

template <class R>
BasicGrassmann<R> gr_apply(const BasicGrMorphism<R>& phi, const BasicGrassmann<R>& a) {
  if (a.n() != phi.source_n) throw error("gr_apply: element not in the source algebra");
  phi.validate();
  const R& proto = phi.images.empty() ? a.proto() : phi.images[0].proto();
  BasicGrassmann<R> out(phi.target_n, proto);
  for (const auto& [mask, c] : a.terms()) {
    BasicGrassmann<R> prod = BasicGrassmann<R>::unit(phi.target_n, proto);
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      int bit = __builtin_ctzll(m);
      prod = prod * phi.images[static_cast<std::size_t>(bit)];
    }
    out = out + prod.scaled(c);
  }
  return out;
}

template <class R>
BasicGrMorphism<R> gr_compose(const BasicGrMorphism<R>& psi, const BasicGrMorphism<R>& phi) {
  if (phi.target_n != psi.source_n) throw error("gr_compose: morphisms not composable");
  BasicGrMorphism<R> out;
  out.source_n = phi.source_n;
  out.target_n = psi.target_n;
  for (const auto& im : phi.images) out.images.push_back(gr_apply(psi, im));
  return out;
}

// Named morphisms over Scalar coefficients.
GrMorphism gr_eps(int n);                       // Λ_n -> Λ_0
GrMorphism gr_iota(int n);                      // Λ_0 -> Λ_n
GrMorphism gr_eps_mn(int m, int n);             // Λ_m -> Λ_n, m >= n, kills high generators
GrMorphism gr_iota_nm(int n, int m);            // Λ_n -> Λ_m, n <= m, inclusion
GrMorphism gr_scaling(int n, const Scalar& s);  // λ_i -> s λ_i
GrMorphism gr_permutation(int n, const std::vector<int>& perm);  // λ_i -> λ_{perm[i-1]}

std::string gr_to_string(const GrassmannElement& a);

}  // namespace sup
