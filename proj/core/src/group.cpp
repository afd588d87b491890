#include "super/group.hpp"

#include "super/poly.hpp"

namespace sup {

RatVec apply_exact(const ScalarMat& m, const RatVec& v) {
  if (m.cols() != v.size()) throw error("apply_exact shape mismatch");
  RatVec out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Scalar& s = m.at(i, j);
      if (s.is_zero()) continue;
      if (!s.is_exact() || s.exact_im() != 0)
        throw error("matrix entry is not an exact rational");
      out[i] += s.exact_re() * v[j];
    }
  return out;
}

NilpotentExp::NilpotentExp(const LieSuperalgebraSpec& spec) : spec_(spec) {
  // The even part must be nilpotent for bch coordinates to close up.
  LieSuperalgebraSpec even;
  even.even_basis = spec.even_basis;
  const std::size_t p = spec.even_dim();
  even.brackets.assign(p, std::vector<RatVec>(p, RatVec(p, Rational(0))));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < p; ++t) even.brackets[i][j][t] = spec.brackets[i][j][t];
  if (!nilpotency_class(even))
    throw guard_error("nilpotent_exp model needs a nilpotent even part");
}

GroupElement NilpotentExp::identity() const {
  return GroupElement{RatVec(spec_.even_dim(), Rational(0))};
}

GroupElement NilpotentExp::multiply(const GroupElement& a, const GroupElement& b) const {
  check_element(a);
  check_element(b);
  SuperTensor ta(spec_, 0, Scalar(0));
  SuperTensor tb(spec_, 0, Scalar(0));
  for (std::size_t i = 0; i < spec_.even_dim(); ++i) {
    if (a.coords[i] != 0) ta.add_term(i, 0, Scalar(a.coords[i]));
    if (b.coords[i] != 0) tb.add_term(i, 0, Scalar(b.coords[i]));
  }
  SuperTensor prod = bch(ta, tb, spec_);
  RatVec coords(spec_.even_dim(), Rational(0));
  for (const auto& [key, c] : prod.terms()) {
    if (key.first >= spec_.even_dim() || key.second != 0)
      throw error("bch left the even body");  // cannot happen: grading
    if (!c.is_exact() || c.exact_im() != 0) throw error("bch produced a non-rational");
    coords[key.first] = c.exact_re();
  }
  return GroupElement{coords};
}

GroupElement NilpotentExp::invert(const GroupElement& a) const {
  check_element(a);
  RatVec coords = a.coords;
  for (auto& c : coords) c = -c;
  return GroupElement{coords};
}

ScalarMat NilpotentExp::ad_matrix(const RatVec& even_coords) const {
  const std::size_t d = spec_.dim();
  RatVec v(d, Rational(0));
  for (std::size_t i = 0; i < even_coords.size(); ++i) v[i] = even_coords[i];
  ScalarMat m(d, d, Scalar(0));
  for (std::size_t j = 0; j < d; ++j) {
    RatVec col = spec_.bracket_vec(v, spec_.basis_vec(j));
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = Scalar(col[i]);
  }
  return m;
}

ScalarMat NilpotentExp::ad(const GroupElement& a) const {
  check_element(a);
  return exp_nilpotent(ad_matrix(a.coords));
}

GroupElement NilpotentExp::exp(const RatVec& v0) const {
  if (v0.size() != spec_.even_dim()) throw error("exp argument has wrong dimension");
  return GroupElement{v0};
}

PolyMat NilpotentExp::ad_exp_jet(std::size_t basis_index, std::uint32_t order) const {
  if (basis_index >= spec_.even_dim()) throw error("jet direction must be an even basis index");
  RatVec dir(spec_.even_dim(), Rational(0));
  dir[basis_index] = 1;
  ScalarMat adm = ad_matrix(dir);
  const std::size_t d = spec_.dim();
  MultiPoly proto({"t"});
  MultiPoly t = MultiPoly::var("t", {"t"});
  PolyMat m(d, d, proto);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Scalar& s = adm.at(i, j);
      if (!s.is_zero()) m.at(i, j) = t.scaled(s);
    }
  PolyMat full = exp_nilpotent(m);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) full.at(i, j) = full.at(i, j).truncated(order);
  return full;
}

bool NilpotentExp::element_valid(const GroupElement& a) const {
  return a.coords.size() == spec_.even_dim();
}

GroupElement NilpotentExp::random_element(Rng& rng) const {
  RatVec coords(spec_.even_dim(), Rational(0));
  for (auto& c : coords) c = rng.next_rational(2, 2);
  return GroupElement{coords};
}

ScalingTorus::ScalingTorus(const LieSuperalgebraSpec& spec,
                           std::vector<std::vector<long>> weights)
    : factors_(spec.even_dim()), dim_(spec.dim()), weights_(std::move(weights)) {
  if (weights_.size() != factors_) throw error("one weight row per even basis element");
  for (const auto& row : weights_)
    if (row.size() != dim_) throw error("weight row has wrong length");
}

GroupElement ScalingTorus::identity() const {
  return GroupElement{RatVec(factors_, Rational(1))};
}

GroupElement ScalingTorus::multiply(const GroupElement& a, const GroupElement& b) const {
  check_element(a);
  check_element(b);
  RatVec coords(factors_, Rational(1));
  for (std::size_t f = 0; f < factors_; ++f) coords[f] = a.coords[f] * b.coords[f];
  return GroupElement{coords};
}

GroupElement ScalingTorus::invert(const GroupElement& a) const {
  check_element(a);
  RatVec coords(factors_, Rational(1));
  for (std::size_t f = 0; f < factors_; ++f) coords[f] = Rational(1) / a.coords[f];
  return GroupElement{coords};
}

ScalarMat ScalingTorus::ad(const GroupElement& a) const {
  check_element(a);
  ScalarMat m(dim_, dim_, Scalar(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational v(1);
    for (std::size_t f = 0; f < factors_; ++f) {
      long w = weights_[f][i];
      if (w >= 0)
        v *= rational_pow(a.coords[f], static_cast<unsigned long>(w));
      else
        v /= rational_pow(a.coords[f], static_cast<unsigned long>(-w));
    }
    m.at(i, i) = Scalar(v);
  }
  return m;
}

GroupElement ScalingTorus::exp(const RatVec&) const {
  throw capability_error("exp unavailable for this group model");
}

PolyMat ScalingTorus::ad_exp_jet(std::size_t basis_index, std::uint32_t order) const {
  if (basis_index >= factors_) throw error("jet direction must be an even basis index");
  MultiPoly proto({"t"});
  MultiPoly t = MultiPoly::var("t", {"t"});
  PolyMat m(dim_, dim_, proto);
  for (std::size_t i = 0; i < dim_; ++i) {
    // e^{t w} truncated.
    long w = weights_[basis_index][i];
    Jet tw(t.scaled(Scalar(Rational(w))), order);
    m.at(i, i) = tw.exp().p;
  }
  return m;
}

bool ScalingTorus::element_valid(const GroupElement& a) const {
  if (a.coords.size() != factors_) return false;
  for (const auto& c : a.coords)
    if (c <= 0) return false;
  return true;
}

GroupElement ScalingTorus::random_element(Rng& rng) const {
  RatVec coords(factors_, Rational(1));
  for (auto& c : coords) c = rng.next_positive_rational(3, 3);
  return GroupElement{coords};
}

}  // namespace sup
