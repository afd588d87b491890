#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "super/hcpair.hpp"
#include "super/poly.hpp"
#include "super/uea.hpp"

namespace sup {

// Chart coordinate names for the exponential chart: "u" when the even rank
// is 1, else "u1", "u2", ...
std::vector<std::string> chart_vars_for(const LieSuperalgebraSpec& spec);

// Polynomial skeleton {h_m}: for every strictly increasing tuple of odd
// directions an alternating form coefficient, polynomial in the chart.
class SuperfunctionSkeleton {
 public:
  SuperfunctionSkeleton() = default;
  SuperfunctionSkeleton(std::vector<std::string> chart_vars, std::vector<std::string> odd_names,
                        std::uint32_t odd_cap)
      : chart_vars_(std::move(chart_vars)), odd_names_(std::move(odd_names)), odd_cap_(odd_cap) {}

  static SuperfunctionSkeleton empty(const LieSuperalgebraSpec& spec, std::uint32_t odd_cap);

  const std::vector<std::string>& chart_vars() const { return chart_vars_; }
  const std::vector<std::string>& odd_names() const { return odd_names_; }
  std::uint32_t odd_cap() const { return odd_cap_; }
  const std::map<std::vector<int>, MultiPoly>& forms() const { return forms_; }

  // tuple: strictly increasing 0-based odd direction indices, size <= cap.
  void set_form(const std::vector<int>& tuple, const MultiPoly& f);
  // Alternating extension: any tuple, with sign; repeated indices give zero.
  MultiPoly form(const std::vector<int>& tuple) const;

  bool operator==(const SuperfunctionSkeleton& o) const {
    return chart_vars_ == o.chart_vars_ && odd_names_ == o.odd_names_ && forms_ == o.forms_;
  }
  bool operator!=(const SuperfunctionSkeleton& o) const { return !(*this == o); }

 private:
  std::vector<std::string> chart_vars_;
  std::vector<std::string> odd_names_;
  std::uint32_t odd_cap_ = 0;
  std::map<std::vector<int>, MultiPoly> forms_;
};

template <class R>
struct SkeletonEval;

template <>
struct SkeletonEval<Scalar> {
  static Scalar eval(const MultiPoly& f, const std::vector<std::string>& vars,
                     const std::vector<Scalar>& args) {
    std::map<std::string, Scalar> point;
    for (std::size_t i = 0; i < vars.size(); ++i) point.emplace(vars[i], args[i]);
    return f.eval(point);
  }
};

template <>
struct SkeletonEval<MultiPoly> {
  static MultiPoly eval(const MultiPoly& f, const std::vector<std::string>&,
                        const std::vector<MultiPoly>& args) {
    return f.compose(args);
  }
};

// Lambda-point evaluation: the double Taylor sum over even-soul multi-indices
// and odd tuples, exact for polynomial skeletons. The point is an element of
// (g (x) Lambda)_0 over the chart basis (even coordinates first).
template <class R>
BasicGrassmann<R> eval_skeleton(const SuperfunctionSkeleton& h,
                                const BasicSuperTensor<R>& point) {
  const std::size_t p = h.chart_vars().size();
  const std::size_t q = h.odd_names().size();
  if (point.dim() != p + q) throw error("point dimension does not match the skeleton chart");
  if (!point.is_lambda_even()) throw error("point components with wrong parity support");
  const int n = point.lambda_n();
  const R proto = RingOps<R>::zero_like(point.proto());

  std::vector<R> body(p, proto);
  std::vector<BasicGrassmann<R>> soul(p, BasicGrassmann<R>(n, proto));
  std::vector<BasicGrassmann<R>> nu(q, BasicGrassmann<R>(n, proto));
  for (const auto& [key, c] : point.terms()) {
    if (key.first < p) {
      if (key.second == 0)
        body[key.first] = c;
      else
        soul[key.first].add_term(key.second, c);
    } else {
      nu[key.first - p].add_term(key.second, c);
    }
  }

  BasicGrassmann<R> result(n, proto);
  const BasicGrassmann<R> unit = BasicGrassmann<R>::unit(n, proto);

  for (const auto& [tuple, form] : h.forms()) {
    BasicGrassmann<R> nuprod = unit;
    for (int j : tuple) {
      nuprod = nuprod * nu[static_cast<std::size_t>(j)];
      if (nuprod.is_zero()) break;
    }
    if (nuprod.is_zero()) continue;

    // Multiset Taylor over the even souls (finite: souls are nilpotent).
    std::function<void(std::size_t, const MultiPoly&, const BasicGrassmann<R>&, const Rational&)>
        rec = [&](std::size_t i, const MultiPoly& f, const BasicGrassmann<R>& acc,
                  const Rational& fact) {
          if (f.is_zero()) return;
          if (i == p) {
            R val = SkeletonEval<R>::eval(f, h.chart_vars(), body);
            if (RingOps<R>::is_zero(val)) return;
            result = result + (acc * nuprod).scaled(RingOps<R>::scale(val, Rational(1) / fact));
            return;
          }
          MultiPoly fd = f;
          BasicGrassmann<R> spow = unit;
          Rational kf(1);
          for (std::uint32_t k = 0;; ++k) {
            if (k > 0) {
              fd = fd.derivative(h.chart_vars()[i]);
              spow = spow * soul[i];
              kf *= Rational(static_cast<long>(k));
              if (fd.is_zero() || spow.is_zero()) break;
            }
            rec(i + 1, fd, acc * spow, fact * kf);
          }
        };
    rec(0, form, unit, Rational(1));
  }
  return result;
}

// Element of Hom(U(g_C), functions on the chart): one polynomial per PBW
// monomial up to the degree cap, zero when absent.
struct HomForm {
  std::vector<std::string> chart_vars;
  std::uint32_t cap = 0;
  std::map<PBWMonomial, MultiPoly> values;
  bool truncated = false;

  MultiPoly value(const PBWMonomial& m) const;
  MultiPoly value(const LieSuperalgebraSpec& spec, const UEAElement& d) const;
  void set_value(const PBWMonomial& m, const MultiPoly& f);
  bool operator==(const HomForm& o) const {
    return chart_vars == o.chart_vars && cap == o.cap && values == o.values;
  }
};

// Ordering sign between lambda_{I_k}...lambda_{I_1} and lambda_1...lambda_k:
// (-1)^{k(k-1)/2} on the odd-letter count.
inline int dxvsdx_sign(int k) {
  return ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
}

// One product factor g * ... * exp(t_i x_{basis} (x) lambda): lambda_pos is
// the 1-based Grassmann generator, or 0 for a plain even direction.
struct ProductFactor {
  std::size_t basis;
  int lambda_pos;
};

// Symbolic chart coordinates of g * exp(...factors...) with a symbolic body,
// over the polynomial ring in chart vars + one t-variable per factor.
BasicSuperTensor<MultiPoly> product_point(const HCPair& pair,
                                          const std::vector<ProductFactor>& factors,
                                          int lambda_n,
                                          const std::vector<std::string>& tvars);

// Phi in the forward direction on one word of generators; the polynomial is
// over the chart variables.
MultiPoly phi_forward_poly(const SuperfunctionSkeleton& h, const HCPair& pair,
                           const std::vector<std::size_t>& word);
Scalar phi_forward_value(const SuperfunctionSkeleton& h, const HCPair& pair,
                         const std::vector<std::size_t>& word, const GroupElement& g);
HomForm phi_forward_hom(const SuperfunctionSkeleton& h, const HCPair& pair, std::uint32_t cap);

// Right multiplication in the argument: (linv_hom(h, x))(D) = h(D x).
HomForm linv_hom(const LieSuperalgebraSpec& spec, const HomForm& h, const UEAElement& x);

// Even-direction left-invariant derivative of a chart polynomial.
MultiPoly linv_even_derivative(const HCPair& pair, const MultiPoly& f, std::size_t even_index);

// g_0-equivariance of a HomForm: value(x D) = L_x value(D) for even x.
HCReport hom_equivariance_check(const HCPair& pair, const HomForm& h);

struct PhiInverseResult {
  SuperfunctionSkeleton skeleton;
  bool consistent = true;
  // Monomials whose forward image of the solved skeleton differs from the
  // input, with the defect polynomial.
  std::vector<std::pair<PBWMonomial, MultiPoly>> residuals;
};

PhiInverseResult phi_inverse(const HomForm& h, const HCPair& pair, std::uint32_t odd_cap);

struct SymmetrizedReport {
  bool ok = true;
  MultiPoly defect;  // lhs - rhs over the chart variables
};

// Mixed t-partial of h(g e^{t_1 v_1 + ... + t_n v_n}) against the averaged
// iterated one-direction derivatives, exactly.
SymmetrizedReport symmetrized_derivative_check(const SuperfunctionSkeleton& h,
                                               const HCPair& pair,
                                               const std::vector<std::size_t>& directions);

// All strictly increasing tuples of the given size over {0,...,q-1}.
std::vector<std::vector<int>> increasing_tuples(std::size_t q, std::size_t m);

}  // namespace sup
