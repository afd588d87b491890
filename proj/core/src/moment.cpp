#include "super/moment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "super/uea.hpp"

namespace sup {
namespace {

UEAElement mono_element(const LieSuperalgebraSpec& spec, const PBWMonomial& m) {
  UEAElement e(spec);
  e.add_term(m, Scalar(1));
  return e;
}

int mono_parity(const LieSuperalgebraSpec& spec, const PBWMonomial& m) {
  int p = 0;
  for (std::size_t i = spec.even_dim(); i < m.size(); ++i) p ^= static_cast<int>(m[i] & 1);
  return p;
}

// Moment tables may hold float entries next to exact structure constants;
// these promote on demand instead of raising kind_error.
Scalar mul_mixed(const Scalar& a, const Scalar& b) {
  if (a.is_float() != b.is_float()) return a.to_float() * b.to_float();
  return a * b;
}

Scalar add_mixed(const Scalar& a, const Scalar& b) {
  if (a.is_float() != b.is_float()) return a.to_float() + b.to_float();
  return a + b;
}

bool table_has_float(const MomentFunctional& lam) {
  for (const auto& [m, v] : lam.values)
    if (v.is_float()) return true;
  return false;
}

void check_table_shape(const LieSuperalgebraSpec& spec, const MomentFunctional& lam) {
  for (const auto& [m, v] : lam.values) {
    (void)v;
    if (m.size() != spec.dim()) throw error("moment table monomial has the wrong basis size");
    if (mono_degree(m) > lam.degree_cap)
      throw guard_error("moment table entry beyond its own degree cap: " +
                        mono_to_string(spec, m));
  }
}

// Records even monomials absent from the table; odd monomials read as zero.
void collect_missing(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                     const UEAElement& e, std::set<std::string>& missing) {
  for (const auto& [m, c] : e.terms()) {
    (void)c;
    if (mono_parity(spec, m) != 0) continue;
    if (lam.values.find(m) == lam.values.end()) missing.insert(mono_to_string(spec, m));
  }
}

Scalar eval_known(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                  const UEAElement& e) {
  Scalar acc(0);
  for (const auto& [m, c] : e.terms()) acc = add_mixed(acc, mul_mixed(c, moment_value(spec, lam, m)));
  return acc;
}

// Gram of lam(m_a^* m_b) over the basis, with a single incompleteness report
// covering every required entry.
ScalarMat moment_gram(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                      const std::vector<PBWMonomial>& basis) {
  const std::size_t n = basis.size();
  std::vector<UEAElement> stars;
  stars.reserve(n);
  for (const auto& m : basis) stars.push_back(uea_star(spec, mono_element(spec, m)));

  std::vector<std::vector<UEAElement>> prods(n);
  std::set<std::string> missing;
  for (std::size_t a = 0; a < n; ++a) {
    prods[a].reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
      prods[a].push_back(uea_mul(spec, stars[a], mono_element(spec, basis[b])));
      collect_missing(spec, lam, prods[a][b], missing);
    }
  }
  if (!missing.empty())
    throw incomplete_error("moment table is missing required even entries",
                           std::vector<std::string>(missing.begin(), missing.end()));

  ScalarMat g(n, n, Scalar(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.at(a, b) = eval_known(spec, lam, prods[a][b]);
  if (table_has_float(lam))
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.at(a, b) = g.at(a, b).to_float();
  return g;
}

std::string combo_to_string(const LieSuperalgebraSpec& spec,
                            const std::vector<PBWMonomial>& basis,
                            const std::vector<Scalar>& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << v[k].to_string() << ")*(" << mono_to_string(spec, basis[k]) << ")";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

double cdist(const Scalar& a, const Scalar& b) {
  return std::abs(a.to_complex() - b.to_complex());
}

bool scalar_close(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return (a - b).is_zero();
  return cdist(a, b) <= tol;
}

std::vector<Scalar> mat_col(const ScalarMat& m, std::size_t j) {
  std::vector<Scalar> c(m.rows(), Scalar(0));
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
  return c;
}

}  // namespace

Scalar moment_value(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                    const PBWMonomial& m) {
  if (m.size() != spec.dim()) throw error("monomial has the wrong basis size");
  if (mono_degree(m) > lam.degree_cap)
    throw guard_error("monomial degree exceeds the moment table cap: " +
                      mono_to_string(spec, m));
  auto it = lam.values.find(m);
  if (it != lam.values.end()) return it->second;
  if (mono_parity(spec, m) != 0) return Scalar(0);
  throw incomplete_error("moment table is missing required even entries",
                         {mono_to_string(spec, m)});
}

Scalar moment_eval(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                   const UEAElement& d) {
  std::set<std::string> missing;
  collect_missing(spec, lam, d, missing);
  if (!missing.empty())
    throw incomplete_error("moment table is missing required even entries",
                           std::vector<std::string>(missing.begin(), missing.end()));
  return eval_known(spec, lam, d);
}

MomentReport moment_check(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                          double tol) {
  check_table_shape(spec, lam);
  MomentReport rep;
  rep.d = lam.degree_cap / 2;

  for (const auto& [m, v] : lam.values) {
    if (mono_parity(spec, m) != 0 && !v.is_zero()) {
      rep.even_ok = false;
      rep.defects.push_back("odd monomial carries a nonzero moment: " + mono_to_string(spec, m));
    }
  }

  // Star images stay within the cap, so the Hermitian scan shares the
  // missing-entry sweep with the Gram assembly.
  std::set<std::string> missing;
  std::vector<std::pair<UEAElement, Scalar>> star_pairs;
  for (const auto& [m, v] : lam.values) {
    UEAElement se = uea_star(spec, mono_element(spec, m));
    collect_missing(spec, lam, se, missing);
    star_pairs.emplace_back(std::move(se), v);
  }
  if (!missing.empty())
    throw incomplete_error("moment table is missing required even entries",
                           std::vector<std::string>(missing.begin(), missing.end()));
  for (const auto& [se, v] : star_pairs) {
    Scalar lhs = eval_known(spec, lam, se);
    if (!scalar_close(lhs, v.conj(), tol)) {
      rep.hermitian_ok = false;
      rep.defects.push_back("lam(D*) != conj(lam(D)) at D with lam(D) = " + v.to_string());
    }
  }

  rep.basis = enumerate_monomials(spec, rep.d);
  if (rep.even_ok && rep.hermitian_ok) {
    rep.gram = moment_gram(spec, lam, rep.basis);
    rep.ldl = ldl_hermitian(rep.gram, tol);
    rep.psd = rep.ldl.psd;
    if (!rep.psd)
      rep.defects.push_back("negative direction D = " +
                            combo_to_string(spec, rep.basis, rep.ldl.witness) +
                            " with lam(D* D) = " + rep.ldl.witness_value.to_string());
  } else {
    // The Gram cannot be Hermitian when either scan fails, so positivity is
    // not certified at all.
    rep.psd = false;
    rep.defects.push_back("positivity not certified: the symmetry scans failed");
  }
  rep.ok = rep.even_ok && rep.hermitian_ok && rep.psd;
  return rep;
}

TruncatedGNS moment_gns(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                        std::uint32_t d, double tol) {
  check_table_shape(spec, lam);
  if (d < 2) throw guard_error("truncated GNS needs degree at least 2");
  if (2 * d > lam.degree_cap)
    throw guard_error("moment table cap " + std::to_string(lam.degree_cap) +
                      " is too small for truncated GNS at degree " + std::to_string(d));

  TruncatedGNS t;
  t.d = d;
  t.basis_full = enumerate_monomials(spec, d);
  t.basis_mid = enumerate_monomials(spec, d - 1);
  t.basis_low = enumerate_monomials(spec, d - 2);

  // enumerate_monomials sorts by degree, so the lower bases are prefixes of
  // basis_full and their Grams are leading blocks of the big one.
  ScalarMat g_full = moment_gram(spec, lam, t.basis_full);
  auto block = [&](std::size_t n) {
    ScalarMat g(n, n, Scalar(0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.at(a, b) = g_full.at(a, b);
    return g;
  };
  auto parities = [&](const std::vector<PBWMonomial>& basis) {
    std::vector<int> p;
    p.reserve(basis.size());
    for (const auto& m : basis) p.push_back(mono_parity(spec, m));
    return p;
  };
  t.full = gram_quotient(g_full, parities(t.basis_full), tol);
  t.mid = gram_quotient(block(t.basis_mid.size()), parities(t.basis_mid), tol);
  t.low = gram_quotient(block(t.basis_low.size()), parities(t.basis_low), tol);

  const bool promote = table_has_float(lam);
  std::map<PBWMonomial, std::size_t> index_full, index_mid;
  for (std::size_t i = 0; i < t.basis_full.size(); ++i) index_full[t.basis_full[i]] = i;
  for (std::size_t i = 0; i < t.basis_mid.size(); ++i) index_mid[t.basis_mid[i]] = i;

  // Left multiplication by b_i maps the span of B_k into the span of B_{k+1};
  // project back through the quotient, no Gram solve is involved.
  auto block_map = [&](std::size_t gen, const std::vector<PBWMonomial>& src_basis,
                       const GramQuotient& src, const GramQuotient& dst,
                       const std::map<PBWMonomial, std::size_t>& dst_index) {
    ScalarMat r(dst.rank, src.rank, promote ? Scalar::flt(0.0) : Scalar(0));
    UEAElement bi = UEAElement::generator(spec, gen);
    for (std::size_t k = 0; k < src.rank; ++k) {
      std::vector<Scalar> u(dst_index.size(), promote ? Scalar::flt(0.0) : Scalar(0));
      for (std::size_t j = 0; j < src_basis.size(); ++j) {
        const Scalar& q = src.qcols[k][j];
        if (q.is_zero()) continue;
        UEAElement prod = uea_mul(spec, bi, mono_element(spec, src_basis[j]));
        for (const auto& [m, c] : prod.terms()) {
          std::size_t idx = dst_index.at(m);
          u[idx] = add_mixed(u[idx], mul_mixed(q, c));
        }
      }
      std::vector<Scalar> col = quotient_coords(dst, u);
      for (std::size_t i = 0; i < dst.rank; ++i) r.at(i, k) = col[i];
    }
    return r;
  };
  auto inclusion = [&](const GramQuotient& src, const GramQuotient& dst,
                       std::size_t dst_basis_size) {
    ScalarMat r(dst.rank, src.rank, promote ? Scalar::flt(0.0) : Scalar(0));
    for (std::size_t k = 0; k < src.rank; ++k) {
      std::vector<Scalar> u(dst_basis_size, promote ? Scalar::flt(0.0) : Scalar(0));
      for (std::size_t j = 0; j < src.qcols[k].size(); ++j) u[j] = src.qcols[k][j];
      std::vector<Scalar> col = quotient_coords(dst, u);
      for (std::size_t i = 0; i < dst.rank; ++i) r.at(i, k) = col[i];
    }
    return r;
  };

  for (std::size_t i = 0; i < spec.dim(); ++i) {
    t.rho_mid_full.push_back(block_map(i, t.basis_mid, t.mid, t.full, index_full));
    t.rho_low_mid.push_back(block_map(i, t.basis_low, t.low, t.mid, index_mid));
  }
  t.incl_mid_full = inclusion(t.mid, t.full, t.basis_full.size());
  t.incl_low_mid = inclusion(t.low, t.mid, t.basis_mid.size());

  const double eff = std::max(tol, 1e-12);
  auto mat_defect = [&](const ScalarMat& a, const ScalarMat& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, cdist(a.at(i, j), b.at(i, j)));
    return worst;
  };

  // Graded commutators land in degree <= 2, so they act from the low block:
  // rho(b_i) rho(b_j) -+ rho(b_j) rho(b_i) = rho([b_i, b_j]) as maps
  // Q_{d-2} -> Q_d.
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    for (std::size_t j = 0; j < spec.dim(); ++j) {
      bool both_odd = spec.basis_parity(i) == Parity::Odd && spec.basis_parity(j) == Parity::Odd;
      ScalarMat ij = t.rho_mid_full[i] * t.rho_low_mid[j];
      ScalarMat ji = t.rho_mid_full[j] * t.rho_low_mid[i];
      ScalarMat lhs = both_odd ? ij + ji : ij - ji;
      ScalarMat rhs(t.full.rank, t.low.rank, promote ? Scalar::flt(0.0) : Scalar(0));
      const RatVec& c = spec.brackets[i][j];
      ScalarMat sum(t.mid.rank, t.low.rank, promote ? Scalar::flt(0.0) : Scalar(0));
      for (std::size_t k = 0; k < spec.dim(); ++k) {
        if (c[k] == Rational(0)) continue;
        sum = sum + t.rho_low_mid[k].scaled(promote ? Scalar::flt(c[k].get_d()) : Scalar(c[k]));
      }
      rhs = t.incl_mid_full * sum;
      double defect = mat_defect(lhs, rhs);
      if (defect > eff) {
        t.bracket_report.ok = false;
        t.bracket_report.defects.push_back(
            "bracket relation fails on the low block at (" + spec.name_of(i) + ", " +
            spec.name_of(j) + "), defect " + std::to_string(defect));
      }
    }
  }

  // <rho(x)u, w> = i <u, rho(x)w> for odd x (star(x) = -i x); even generators
  // act skew-symmetrically. Both checked between the mid blocks inside Q_d.
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    bool odd = spec.basis_parity(i) == Parity::Odd;
    double worst = 0.0;
    for (std::size_t k = 0; k < t.mid.rank; ++k) {
      std::vector<Scalar> xu = mat_col(t.rho_mid_full[i], k);
      std::vector<Scalar> u = mat_col(t.incl_mid_full, k);
      for (std::size_t l = 0; l < t.mid.rank; ++l) {
        std::vector<Scalar> w = mat_col(t.incl_mid_full, l);
        std::vector<Scalar> xw = mat_col(t.rho_mid_full[i], l);
        Scalar lhs = metric_inner(t.full, xu, w);
        Scalar rhs = metric_inner(t.full, u, xw);
        Scalar expect = odd ? mul_mixed(Scalar::i(), rhs) : -rhs;
        worst = std::max(worst, cdist(lhs, expect));
      }
    }
    if (worst > eff) {
      t.symmetry_report.ok = false;
      t.symmetry_report.defects.push_back("operator symmetry fails for " + spec.name_of(i) +
                                          ", defect " + std::to_string(worst));
    }
  }

  t.verdict = "positive-at-degree-" + std::to_string(d);
  return t;
}

GrowthReport growth_diagnostic(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                               const UEAElement& d1, const UEAElement& d2, std::size_t x_index,
                               std::uint32_t n_max) {
  if (x_index >= spec.dim()) throw error("basis index out of range");
  if (spec.basis_parity(x_index) != Parity::Even)
    throw guard_error("growth diagnostic direction must be even");
  if (d1.degree() + n_max + d2.degree() > lam.degree_cap)
    throw guard_error("growth diagnostic exceeds the moment table cap");

  GrowthReport rep;
  UEAElement x = UEAElement::generator(spec, x_index);
  UEAElement cur = d2;
  double fact = 1.0;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      fact *= n;
      cur = uea_mul(spec, x, cur);
    }
    Scalar v = moment_eval(spec, lam, uea_mul(spec, d1, cur));
    rep.a.push_back(std::abs(v.to_complex()) / fact);
    rep.partial_sum += rep.a.back();
  }
  for (std::size_t n = 0; n + 1 < rep.a.size(); ++n)
    if (rep.a[n] > 0.0) rep.ratios.push_back(rep.a[n + 1] / rep.a[n]);
  return rep;
}

PDFunction pdfunction_from_moment(const HCPair& pair, const MomentFunctional& lam,
                                  std::function<Scalar(const GroupElement&)> character) {
  check_table_shape(pair.spec, lam);
  PDFunction f;
  f.exact = !character && !table_has_float(lam);
  f.eval = [spec = pair.spec, lam, character, group = pair.group](const SElement& s) {
    Scalar chi(1);
    if (character) {
      chi = character(s.g);
    } else if (!(s.g == group->identity())) {
      throw capability_error(
          "moment-backed function needs a group character for nontrivial group parts");
    }
    return mul_mixed(chi, moment_eval(spec, lam, s.d));
  };
  return f;
}

MomentFunctional moment_from_pdfunction(const HCPair& pair, const PDFunction& phi,
                                        std::uint32_t degree_cap) {
  MomentFunctional lam;
  lam.degree_cap = degree_cap;
  GroupElement e = pair.group->identity();
  for (const auto& m : enumerate_monomials(pair.spec, degree_cap)) {
    Scalar v = phi.eval(SElement{e, mono_element(pair.spec, m)});
    if (mono_parity(pair.spec, m) == 0 || !v.is_zero()) lam.values[m] = v;
  }
  return lam;
}

}  // namespace sup
