#include "super/superfunctions.hpp"

#include <algorithm>
#include <sstream>

#include "super/matrix.hpp"

namespace sup {

namespace {

void require_nilpotent_model(const HCPair& pair, const char* what) {
  if (!pair.group || pair.group->name() != "nilpotent_exp")
    throw capability_error(std::string(what) + " needs the nilpotent_exp group model");
}

void check_skeleton_pair(const SuperfunctionSkeleton& h, const HCPair& pair) {
  if (h.chart_vars() != chart_vars_for(pair.spec) || h.odd_names() != pair.spec.odd_basis)
    throw error("skeleton does not match the pair's chart");
}

MultiPoly zero_poly(const std::vector<std::string>& vars) {
  return MultiPoly::constant(Scalar(0), vars);
}

// Coefficient of t_1...t_k (each exponent exactly one) in the full-mask
// Grassmann coefficient, as a polynomial over the chart variables.
MultiPoly extract_linear(const MultiPoly& f, const std::vector<std::string>& tvars,
                         const std::vector<std::string>& chart_vars) {
  std::map<std::string, std::uint32_t> fixed;
  for (const auto& t : tvars) fixed.emplace(t, 1);
  return f.extract(fixed).with_vars(chart_vars);
}

UEAElement mono_element(const LieSuperalgebraSpec& spec, const PBWMonomial& m) {
  UEAElement e(spec);
  e.add_term(m, Scalar(1));
  return e;
}

}  // namespace

std::vector<std::string> chart_vars_for(const LieSuperalgebraSpec& spec) {
  std::vector<std::string> vars;
  if (spec.even_dim() == 1) {
    vars.push_back("u");
  } else {
    for (std::size_t i = 0; i < spec.even_dim(); ++i) vars.push_back("u" + std::to_string(i + 1));
  }
  return vars;
}

SuperfunctionSkeleton SuperfunctionSkeleton::empty(const LieSuperalgebraSpec& spec,
                                                   std::uint32_t odd_cap) {
  return SuperfunctionSkeleton(chart_vars_for(spec), spec.odd_basis, odd_cap);
}

void SuperfunctionSkeleton::set_form(const std::vector<int>& tuple, const MultiPoly& f) {
  if (tuple.size() > odd_cap_) throw error("form degree exceeds the odd cap");
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || static_cast<std::size_t>(tuple[i]) >= odd_names_.size())
      throw error("odd direction index out of range");
    if (i > 0 && tuple[i] <= tuple[i - 1])
      throw error("form tuples must be strictly increasing");
  }
  if (f.vars() != chart_vars_) throw error("form polynomial is not over the chart variables");
  if (f.is_zero())
    forms_.erase(tuple);
  else
    forms_[tuple] = f;
}

MultiPoly SuperfunctionSkeleton::form(const std::vector<int>& tuple) const {
  std::vector<int> sorted = tuple;
  int sign = 1;
  // Insertion sort with sign tracking; a repeated index kills the form.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    for (std::size_t j = i; j > 0 && sorted[j] < sorted[j - 1]; --j) {
      std::swap(sorted[j], sorted[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) return zero_poly(chart_vars_);
  auto it = forms_.find(sorted);
  if (it == forms_.end()) return zero_poly(chart_vars_);
  return sign == 1 ? it->second : -it->second;
}

MultiPoly HomForm::value(const PBWMonomial& m) const {
  if (mono_degree(m) > cap) throw error("HomForm value requested beyond the degree cap");
  auto it = values.find(m);
  return it == values.end() ? zero_poly(chart_vars) : it->second;
}

MultiPoly HomForm::value(const LieSuperalgebraSpec&, const UEAElement& d) const {
  MultiPoly out = zero_poly(chart_vars);
  for (const auto& [m, c] : d.terms()) out += value(m).scaled(c);
  return out;
}

void HomForm::set_value(const PBWMonomial& m, const MultiPoly& f) {
  if (mono_degree(m) > cap) throw error("HomForm value set beyond the degree cap");
  if (f.vars() != chart_vars) throw error("HomForm value is not over the chart variables");
  if (f.is_zero())
    values.erase(m);
  else
    values[m] = f;
}

BasicSuperTensor<MultiPoly> product_point(const HCPair& pair,
                                          const std::vector<ProductFactor>& factors,
                                          int lambda_n,
                                          const std::vector<std::string>& tvars) {
  require_nilpotent_model(pair, "symbolic product point");
  if (factors.size() != tvars.size()) throw error("one t-variable per factor is required");
  const LieSuperalgebraSpec& spec = pair.spec;
  std::vector<std::string> chart = chart_vars_for(spec);
  std::vector<std::string> vars = chart;
  for (const auto& t : tvars) {
    if (std::find(vars.begin(), vars.end(), t) != vars.end())
      throw error("t-variable collides with another variable");
    vars.push_back(t);
  }
  MultiPoly proto = zero_poly(vars);

  BasicSuperTensor<MultiPoly> v(spec, lambda_n, proto);
  for (std::size_t i = 0; i < spec.even_dim(); ++i)
    v.add_term(i, 0, MultiPoly::var(chart[i], vars));

  for (std::size_t f = 0; f < factors.size(); ++f) {
    const ProductFactor& pf = factors[f];
    if (pf.basis >= spec.dim()) throw error("factor basis index out of range");
    if (pf.lambda_pos < 0 || pf.lambda_pos > lambda_n)
      throw error("factor Grassmann position out of range");
    int odd_basis = spec.basis_parity(pf.basis) == Parity::Odd ? 1 : 0;
    int odd_lambda = pf.lambda_pos > 0 ? 1 : 0;
    if ((odd_basis + odd_lambda) % 2 != 0) throw error("product factor is not Lambda-even");
    std::uint64_t mask = pf.lambda_pos > 0 ? (std::uint64_t{1} << (pf.lambda_pos - 1)) : 0;
    BasicSuperTensor<MultiPoly> a(spec, lambda_n, proto);
    a.add_term(pf.basis, mask, MultiPoly::var(tvars[f], vars));
    v = bch(v, a, spec);
  }
  return v;
}

MultiPoly phi_forward_poly(const SuperfunctionSkeleton& h, const HCPair& pair,
                           const std::vector<std::size_t>& word) {
  require_nilpotent_model(pair, "phi_forward");
  check_skeleton_pair(h, pair);
  const LieSuperalgebraSpec& spec = pair.spec;

  std::vector<ProductFactor> factors;
  std::vector<std::string> tvars;
  int odd_count = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= spec.dim()) throw error("word letter out of range");
    bool odd = spec.basis_parity(word[i]) == Parity::Odd;
    if (odd) ++odd_count;
    factors.push_back({word[i], odd ? odd_count : 0});
    tvars.push_back("t" + std::to_string(i + 1));
  }

  BasicSuperTensor<MultiPoly> point = product_point(pair, factors, odd_count, tvars);
  BasicGrassmann<MultiPoly> value = eval_skeleton(h, point);
  std::uint64_t full_mask = odd_count == 0 ? 0 : ((std::uint64_t{1} << odd_count) - 1);
  MultiPoly c = extract_linear(value.coeff(full_mask), tvars, h.chart_vars());
  return dxvsdx_sign(odd_count) == 1 ? c : -c;
}

Scalar phi_forward_value(const SuperfunctionSkeleton& h, const HCPair& pair,
                         const std::vector<std::size_t>& word, const GroupElement& g) {
  if (!pair.group->element_valid(g)) throw error("group element is not valid for the model");
  MultiPoly f = phi_forward_poly(h, pair, word);
  std::map<std::string, Scalar> point;
  const std::vector<std::string>& chart = h.chart_vars();
  if (g.coords.size() != chart.size()) throw error("group element has the wrong coordinate count");
  for (std::size_t i = 0; i < chart.size(); ++i) point.emplace(chart[i], Scalar(g.coords[i]));
  return f.eval(point);
}

HomForm phi_forward_hom(const SuperfunctionSkeleton& h, const HCPair& pair, std::uint32_t cap) {
  check_skeleton_pair(h, pair);
  HomForm out;
  out.chart_vars = h.chart_vars();
  out.cap = cap;
  for (const PBWMonomial& m : enumerate_monomials(pair.spec, cap)) {
    std::vector<std::size_t> word;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) word.push_back(i);
    MultiPoly f = phi_forward_poly(h, pair, word);
    if (!f.is_zero()) out.values[m] = f;
  }
  return out;
}

HomForm linv_hom(const LieSuperalgebraSpec& spec, const HomForm& h, const UEAElement& x) {
  std::uint32_t dx = x.degree();
  if (dx > h.cap) throw error("linv_hom: argument degree exceeds the form's cap");
  HomForm out;
  out.chart_vars = h.chart_vars;
  out.cap = h.cap - dx;
  out.truncated = h.truncated || out.cap < h.cap;
  for (const PBWMonomial& m : enumerate_monomials(spec, out.cap)) {
    UEAElement prod = uea_mul(spec, mono_element(spec, m), x);
    MultiPoly f = h.value(spec, prod);
    if (!f.is_zero()) out.values[m] = f;
  }
  return out;
}

MultiPoly linv_even_derivative(const HCPair& pair, const MultiPoly& f, std::size_t even_index) {
  require_nilpotent_model(pair, "linv_even_derivative");
  const LieSuperalgebraSpec& spec = pair.spec;
  if (even_index >= spec.even_dim()) throw error("even direction index out of range");
  std::vector<std::string> chart = chart_vars_for(spec);
  if (f.vars() != chart) throw error("polynomial is not over the chart variables");
  BasicSuperTensor<MultiPoly> point =
      product_point(pair, {{even_index, 0}}, 0, {std::string("t")});
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < spec.even_dim(); ++i) images.push_back(point.coeff(i, 0));
  MultiPoly composed = f.compose(images);
  return composed.extract({{"t", 1}}).with_vars(chart);
}

HCReport hom_equivariance_check(const HCPair& pair, const HomForm& h) {
  require_nilpotent_model(pair, "hom_equivariance_check");
  const LieSuperalgebraSpec& spec = pair.spec;
  HCReport report;
  if (h.cap == 0) return report;
  std::vector<PBWMonomial> monos = enumerate_monomials(spec, h.cap - 1);
  for (std::size_t e = 0; e < spec.even_dim(); ++e) {
    UEAElement xe = UEAElement::generator(spec, e);
    for (const PBWMonomial& m : monos) {
      UEAElement prod = uea_mul(spec, xe, mono_element(spec, m));
      MultiPoly lhs = h.value(spec, prod);
      MultiPoly rhs = linv_even_derivative(pair, h.value(m), e);
      if (!(lhs - rhs).is_zero()) {
        report.ok = false;
        report.defects.push_back("equivariance defect at x=" + spec.even_basis[e] +
                                 ", D=" + mono_to_string(spec, m) + ": " +
                                 (lhs - rhs).to_string());
      }
    }
  }
  return report;
}

std::vector<std::vector<int>> increasing_tuples(std::size_t q, std::size_t m) {
  std::vector<std::vector<int>> out;
  if (m > q) return out;
  std::vector<int> cur(m);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int start) {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= static_cast<int>(q) - static_cast<int>(m - pos); ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return out;
}

namespace {

// det of the minor of w with the given rows and columns, by permutation
// expansion; sizes here are tiny.
MultiPoly minor_det(const PolyMat& w, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::size_t m = rows.size();
  if (m == 0) return MultiPoly::constant(Scalar(1), w.proto().vars());
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  MultiPoly det = MultiPoly::constant(Scalar(0), w.proto().vars());
  do {
    int sign = 1;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    MultiPoly term = MultiPoly::constant(Scalar(sign), w.proto().vars());
    for (std::size_t r = 0; r < m; ++r)
      term = term * w.at(static_cast<std::size_t>(rows[r]),
                         static_cast<std::size_t>(cols[perm[r]]));
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

PhiInverseResult phi_inverse(const HomForm& h, const HCPair& pair, std::uint32_t odd_cap) {
  require_nilpotent_model(pair, "phi_inverse");
  const LieSuperalgebraSpec& spec = pair.spec;
  std::vector<std::string> chart = chart_vars_for(spec);
  if (h.chart_vars != chart) throw error("HomForm is not over the pair's chart");
  const std::size_t q = spec.odd_dim();
  std::uint32_t solve_cap = std::min<std::uint32_t>(odd_cap, static_cast<std::uint32_t>(q));
  if (h.cap < solve_cap) {
    std::vector<std::string> missing;
    for (std::uint32_t m = h.cap + 1; m <= solve_cap; ++m)
      missing.push_back("pure odd monomials of degree " + std::to_string(m));
    throw incomplete_error("HomForm cap is below the requested odd cap", missing);
  }

  PhiInverseResult result;
  result.skeleton = SuperfunctionSkeleton::empty(spec, odd_cap);

  PBWMonomial one(spec.dim(), 0);
  result.skeleton.set_form({}, h.value(one));

  if (solve_cap > 0) {
    // Pushforward of the odd directions through right translation, linear
    // part: w[j][b] = coefficient of t lambda_1 at odd basis j.
    MultiPoly chart_zero = zero_poly(chart);
    PolyMat w(q, q, chart_zero);
    for (std::size_t b = 0; b < q; ++b) {
      BasicSuperTensor<MultiPoly> pt =
          product_point(pair, {{spec.even_dim() + b, 1}}, 1, {std::string("t")});
      for (std::size_t j = 0; j < q; ++j)
        w.at(j, b) = pt.coeff(spec.even_dim() + j, 1).extract({{"t", 1}}).with_vars(chart);
    }

    for (std::uint32_t m = 1; m <= solve_cap; ++m) {
      std::vector<std::vector<int>> tuples = increasing_tuples(q, m);
      const std::size_t ct = tuples.size();
      PolyMat mat(ct, ct, chart_zero);
      for (std::size_t a = 0; a < ct; ++a)
        for (std::size_t t = 0; t < ct; ++t) mat.at(a, t) = minor_det(w, tuples[t], tuples[a]);
      PolyMat minv = unipotent_inverse(mat);

      std::vector<MultiPoly> rhs(ct, chart_zero);
      for (std::size_t a = 0; a < ct; ++a) {
        PBWMonomial mono(spec.dim(), 0);
        std::vector<std::size_t> word;
        for (int idx : tuples[a]) {
          mono[spec.even_dim() + static_cast<std::size_t>(idx)] = 1;
          word.push_back(spec.even_dim() + static_cast<std::size_t>(idx));
        }
        MultiPoly known = phi_forward_poly(result.skeleton, pair, word);
        MultiPoly diff = h.value(mono) - known;
        rhs[a] = dxvsdx_sign(static_cast<int>(m)) == 1 ? diff : -diff;
      }

      for (std::size_t t = 0; t < ct; ++t) {
        MultiPoly f = chart_zero;
        for (std::size_t a = 0; a < ct; ++a) f += minv.at(t, a) * rhs[a];
        result.skeleton.set_form(tuples[t], f);
      }
    }
  }

  // Full-table consistency sweep over every monomial the input covers.
  for (const PBWMonomial& m : enumerate_monomials(spec, h.cap)) {
    std::vector<std::size_t> word;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) word.push_back(i);
    MultiPoly diff = h.value(m) - phi_forward_poly(result.skeleton, pair, word);
    if (!diff.is_zero()) {
      result.consistent = false;
      result.residuals.emplace_back(m, diff);
    }
  }
  return result;
}

SymmetrizedReport symmetrized_derivative_check(const SuperfunctionSkeleton& h,
                                               const HCPair& pair,
                                               const std::vector<std::size_t>& directions) {
  require_nilpotent_model(pair, "symmetrized_derivative_check");
  check_skeleton_pair(h, pair);
  const LieSuperalgebraSpec& spec = pair.spec;
  const std::size_t n = directions.size();
  if (n > 6) throw guard_error("symmetrized_derivative_check: too many directions");

  std::vector<std::string> tvars;
  std::vector<int> lpos(n, 0);
  int odd_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (directions[i] >= spec.dim()) throw error("direction index out of range");
    if (spec.basis_parity(directions[i]) == Parity::Odd) lpos[i] = ++odd_count;
    tvars.push_back("t" + std::to_string(i + 1));
  }
  std::uint64_t full_mask = odd_count == 0 ? 0 : ((std::uint64_t{1} << odd_count) - 1);
  std::vector<std::string> chart = chart_vars_for(spec);
  std::vector<std::string> vars = chart;
  for (const auto& t : tvars) vars.push_back(t);
  MultiPoly proto = zero_poly(vars);

  // Single exponential: one bch of the symbolic body with the full sum.
  BasicSuperTensor<MultiPoly> base(spec, odd_count, proto);
  for (std::size_t i = 0; i < spec.even_dim(); ++i)
    base.add_term(i, 0, MultiPoly::var(chart[i], vars));
  BasicSuperTensor<MultiPoly> sum(spec, odd_count, proto);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t mask = lpos[i] > 0 ? (std::uint64_t{1} << (lpos[i] - 1)) : 0;
    sum.add_term(directions[i], mask, MultiPoly::var(tvars[i], vars));
  }
  BasicGrassmann<MultiPoly> lhs_val = eval_skeleton(h, bch(base, sum, spec));
  MultiPoly lhs = extract_linear(lhs_val.coeff(full_mask), tvars, chart);

  // Averaged iterated derivatives over all factor orders.
  MultiPoly rhs = zero_poly(chart);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rational count(0);
  do {
    std::vector<ProductFactor> factors;
    std::vector<std::string> ts;
    for (std::size_t r = 0; r < n; ++r) {
      factors.push_back({directions[order[r]], lpos[order[r]]});
      ts.push_back(tvars[order[r]]);
    }
    BasicSuperTensor<MultiPoly> pt = product_point(pair, factors, odd_count, ts);
    BasicGrassmann<MultiPoly> val = eval_skeleton(h, pt);
    rhs += extract_linear(val.coeff(full_mask), tvars, chart);
    count += 1;
  } while (std::next_permutation(order.begin(), order.end()));
  rhs = rhs.scaled(Scalar(Rational(1) / count));

  SymmetrizedReport report;
  report.defect = lhs - rhs;
  report.ok = report.defect.is_zero();
  return report;
}

}  // namespace sup
