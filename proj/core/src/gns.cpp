#include "super/gns.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace sup {

namespace {

double cdist(const Scalar& a, const Scalar& b) { return std::abs(a.to_complex() - b.to_complex()); }

bool negligible_scalar(const Scalar& s, double tol) {
  if (s.is_float()) return std::abs(s.float_value()) <= tol;
  return s.is_zero();
}

bool mat_has_float(const ScalarMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j).is_float()) return true;
  return false;
}

ScalarMat mat_to_float(const ScalarMat& m) {
  ScalarMat r(m.rows(), m.cols(), Scalar::flt(0.0, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).to_float();
  return r;
}

std::vector<Scalar> vec_to_float(const std::vector<Scalar>& v) {
  std::vector<Scalar> r;
  r.reserve(v.size());
  for (const Scalar& s : v) r.push_back(s.to_float());
  return r;
}

bool vec_has_float(const std::vector<Scalar>& v) {
  for (const Scalar& s : v)
    if (s.is_float()) return true;
  return false;
}

std::string vec_to_string(const std::vector<Scalar>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

int selement_parity(const SElement& s) { return s.d.parity() == Parity::Odd ? 1 : 0; }

}  // namespace

HCReport check_rep(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep, double tol,
                   const std::vector<GroupElement>& group_samples) {
  HCReport report;
  auto defect = [&](const std::string& msg) {
    report.ok = false;
    report.defects.push_back(msg);
  };
  if (rep.rho.size() != spec.dim()) {
    defect("rho matrix count does not match the basis");
    return report;
  }
  const std::size_t n = rep.dim();
  for (std::size_t i = 0; i < rep.rho.size(); ++i)
    if (rep.rho[i].rows() != n || rep.rho[i].cols() != n) {
      defect("rho matrix has the wrong shape at " + spec.name_of(i));
      return report;
    }
  auto coord_parity = [&](std::size_t r) { return r < rep.dim_even ? 0 : 1; };

  bool any_float = false;
  for (const ScalarMat& m : rep.rho)
    if (mat_has_float(m)) any_float = true;
  std::vector<ScalarMat> rho;
  rho.reserve(rep.rho.size());
  for (const ScalarMat& m : rep.rho) rho.push_back(any_float && !mat_has_float(m) ? mat_to_float(m) : m);

  for (std::size_t i = 0; i < rho.size(); ++i) {
    int p = spec.basis_parity(i) == Parity::Odd ? 1 : 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if ((coord_parity(r) ^ coord_parity(c)) != p && cdist(rho[i].at(r, c), Scalar(0)) > tol) {
          defect("rho(" + spec.name_of(i) + ") violates the grading blocks");
          r = n;
          break;
        }
  }

  // Bracket realization on all basis pairs.
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    for (std::size_t j = 0; j < spec.dim(); ++j) {
      bool both_odd = spec.basis_parity(i) == Parity::Odd && spec.basis_parity(j) == Parity::Odd;
      ScalarMat lhs = rho[i] * rho[j];
      ScalarMat sec = rho[j] * rho[i];
      lhs = both_odd ? lhs + sec : lhs - sec;
      ScalarMat rhs(n, n, any_float ? Scalar::flt(0.0, 0.0) : Scalar(0));
      for (std::size_t t = 0; t < spec.dim(); ++t) {
        const Rational& c = spec.brackets[i][j][t];
        if (c == 0) continue;
        Scalar cs = any_float ? Scalar::flt(rational_to_double(c), 0.0) : Scalar(c);
        rhs = rhs + rho[t].scaled(cs);
      }
      double worst = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, cdist(lhs.at(r, c), rhs.at(r, c)));
      if (worst > tol)
        defect("bracket realization fails at (" + spec.name_of(i) + ", " + spec.name_of(j) + ")");
    }
  }

  // Odd symmetry: adjoint(rho(x)) = -i rho(x).
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    if (spec.basis_parity(i) != Parity::Odd) continue;
    ScalarMat adj = adjoint(rho[i]);
    Scalar mi = any_float ? Scalar::flt(0.0, -1.0) : -Scalar::i();
    ScalarMat want = rho[i].scaled(mi);
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, cdist(adj.at(r, c), want.at(r, c)));
    if (worst > tol) defect("odd generator " + spec.name_of(i) + " is not e^{-i pi/4}-symmetric");
  }

  if (rep.pi) {
    for (const GroupElement& g : group_samples) {
      ScalarMat pg = rep.pi(g);
      if (pg.rows() != n || pg.cols() != n) {
        defect("pi(g) has the wrong shape");
        continue;
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if ((coord_parity(r) ^ coord_parity(c)) != 0 && cdist(pg.at(r, c), Scalar(0)) > tol) {
            defect("pi(g) does not preserve the grading");
            r = n;
            break;
          }
    }
  }
  return report;
}

ScalarMat rho_of_uea(const LieSuperalgebraSpec&, const FiniteDimRep& rep,
                     const UEAElement& d) {
  const std::size_t n = rep.dim();
  bool fl = false;
  for (const ScalarMat& m : rep.rho)
    if (mat_has_float(m)) fl = true;
  std::vector<ScalarMat> rho;
  rho.reserve(rep.rho.size());
  for (const ScalarMat& m : rep.rho) rho.push_back(fl && !mat_has_float(m) ? mat_to_float(m) : m);
  const Scalar zero = fl ? Scalar::flt(0.0, 0.0) : Scalar(0);
  ScalarMat acc(n, n, zero);
  for (const auto& [mono, c] : d.terms()) {
    ScalarMat term = ScalarMat::identity(n, zero);
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (std::uint32_t e = 0; e < mono[i]; ++e) term = term * rho[i];
    Scalar cc = fl && !c.is_float() ? c.to_float() : c;
    acc = acc + term.scaled(cc);
  }
  return acc;
}

Scalar matrix_coefficient(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep,
                          const std::vector<Scalar>& v, const std::vector<Scalar>& w,
                          const SElement& s) {
  const std::size_t n = rep.dim();
  if (v.size() != n || w.size() != n) throw error("vector dimension mismatch");
  if (!rep.pi) throw capability_error("the representation has no group evaluator");
  auto homogeneous = [&](const std::vector<Scalar>& x) {
    bool even = false, odd = false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) (i < rep.dim_even ? even : odd) = true;
    return !(even && odd);
  };
  if (!homogeneous(v) || !homogeneous(w))
    throw error("matrix_coefficient needs parity-homogeneous vectors");

  ScalarMat rd = rho_of_uea(spec, rep, s.d);
  ScalarMat pg = rep.pi(s.g);
  if (pg.rows() != n || pg.cols() != n) throw error("pi(g) has the wrong shape");
  bool fl = mat_has_float(rd) || mat_has_float(pg) || vec_has_float(v) || vec_has_float(w);
  std::vector<Scalar> vv = fl ? vec_to_float(v) : v;
  std::vector<Scalar> ww = fl ? vec_to_float(w) : w;
  if (fl && !mat_has_float(rd)) rd = mat_to_float(rd);
  if (fl && !mat_has_float(pg)) pg = mat_to_float(pg);

  std::vector<Scalar> x = mat_vec(rd, vv);
  x = mat_vec(pg, x);
  Scalar out = fl ? Scalar::flt(0.0, 0.0) : Scalar(0);
  for (std::size_t i = 0; i < n; ++i) out += x[i] * ww[i].conj();
  return out;
}

PDFunction pdfunction_from_rep(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep,
                               const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
  PDFunction f;
  f.exact = false;
  f.eval = [spec, rep, v, w](const SElement& s) {
    return matrix_coefficient(spec, rep, v, w, s);
  };
  return f;
}

PDReport check_positive_definite(const HCPair& pair, const PDFunction& phi,
                                 const std::vector<SElement>& samples, double tol) {
  PDReport report;
  const std::size_t n = samples.size();
  for (const SElement& s : samples) {
    if (!s.d.is_parity_homogeneous()) continue;
    if (selement_parity(s) == 1) {
      Scalar val = phi.eval(s);
      if (!negligible_scalar(val, tol)) {
        report.even_ok = false;
        report.ok = false;
        report.defects.push_back("phi does not vanish on an odd element: " + val.to_string());
      }
    }
  }
  Scalar proto = n > 0 ? phi.eval(monoid_identity(pair)) : Scalar(0);
  Scalar zero = proto.is_float() ? Scalar::flt(0.0, 0.0) : Scalar(0);
  report.gram = ScalarMat(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      report.gram.at(i, j) =
          phi.eval(monoid_mul(pair, monoid_star(pair, samples[i]), samples[j]));
  report.ldl = ldl_hermitian(report.gram, tol);
  report.psd = report.ldl.psd;
  if (!report.psd) {
    report.ok = false;
    report.defects.push_back("Gram is not PSD; witness " + vec_to_string(report.ldl.witness) +
                             " has value " + report.ldl.witness_value.to_string());
  }
  return report;
}

GramQuotient gram_quotient(const ScalarMat& gram, const std::vector<int>& gen_parity,
                           double tol) {
  GramQuotient q;
  q.gram = gram;
  q.ldl = ldl_hermitian(gram, tol);
  if (!q.ldl.psd)
    throw guard_error("Gram matrix is not positive semidefinite; witness " +
                      vec_to_string(q.ldl.witness));
  q.rank = q.ldl.rank;
  const std::size_t n = gram.rows();
  const Scalar zero = n > 0 && gram.at(0, 0).is_float() ? Scalar::flt(0.0, 0.0) : Scalar(0);
  const Scalar one = zero.is_float() ? Scalar::flt(1.0, 0.0) : Scalar(1);
  for (std::size_t k = 0; k < q.rank; ++k) {
    // Solve L^* qt = e_k by back substitution, then undo the permutation.
    std::vector<Scalar> qt(n, zero);
    for (std::size_t a_plus = n; a_plus > 0; --a_plus) {
      std::size_t a = a_plus - 1;
      Scalar rhs = a == k ? one : zero;
      for (std::size_t b = a + 1; b < n; ++b) rhs -= q.ldl.L.at(b, a).conj() * qt[b];
      qt[a] = rhs;
    }
    std::vector<Scalar> col(n, zero);
    for (std::size_t a = 0; a < n; ++a) col[q.ldl.perm[a]] = qt[a];
    q.qcols.push_back(col);
    q.metric.push_back(q.ldl.diag[k]);
    q.parity.push_back(gen_parity.empty() ? 0 : gen_parity[q.ldl.perm[k]]);
  }
  return q;
}

std::vector<Scalar> quotient_coords(const GramQuotient& q, const std::vector<Scalar>& u) {
  const std::size_t n = q.gram.rows();
  if (u.size() != n) throw error("coefficient vector has the wrong length");
  std::vector<Scalar> y;
  y.reserve(q.rank);
  for (std::size_t k = 0; k < q.rank; ++k) {
    Scalar acc = u[q.ldl.perm[k]];  // unit diagonal of L
    for (std::size_t a = k + 1; a < n; ++a) acc += q.ldl.L.at(a, k).conj() * u[q.ldl.perm[a]];
    y.push_back(acc);
  }
  return y;
}

Scalar metric_inner(const GramQuotient& q, const std::vector<Scalar>& y,
                    const std::vector<Scalar>& yp) {
  if (y.size() != q.rank || yp.size() != q.rank) throw error("quotient coordinate length mismatch");
  Scalar acc = q.rank > 0 ? q.metric[0] * y[0] * yp[0].conj()
                          : Scalar(0);
  for (std::size_t k = 1; k < q.rank; ++k) acc += q.metric[k] * y[k] * yp[k].conj();
  return acc;
}

GNSModel gns_build(const HCPair& pair, const PDFunction& phi,
                   const std::vector<SElement>& generators,
                   const std::vector<SElement>& acting, double tol) {
  GNSModel model;
  model.generators = generators;
  model.tolerance = tol;
  const std::size_t n = generators.size();
  if (n == 0) throw error("gns_build needs at least one generator");

  std::vector<int> gen_parity;
  for (const SElement& s : generators) {
    if (!s.d.is_parity_homogeneous())
      throw error("generators must be parity-homogeneous");
    gen_parity.push_back(selement_parity(s));
  }

  Scalar probe = phi.eval(monoid_identity(pair));
  const bool fl = probe.is_float();
  const Scalar zero = fl ? Scalar::flt(0.0, 0.0) : Scalar(0);
  const Scalar one = fl ? Scalar::flt(1.0, 0.0) : Scalar(1);

  ScalarMat gram(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram.at(i, j) = phi.eval(monoid_mul(pair, monoid_star(pair, generators[i]), generators[j]));
  model.quotient = gram_quotient(gram, gen_parity, tol);

  SElement e = monoid_identity(pair);
  std::size_t idx = n;
  for (std::size_t i = 0; i < n; ++i)
    if (monoid_equal(generators[i], e)) {
      idx = i;
      break;
    }
  if (idx == n) throw error("generator set must contain the identity (1_G, 1)");
  std::vector<Scalar> e_idx(n, zero);
  e_idx[idx] = one;
  model.v0 = quotient_coords(model.quotient, e_idx);

  // Close the acting set under the involution, then record partners.
  model.op_elements = acting;
  for (std::size_t i = 0; i < model.op_elements.size(); ++i) {
    SElement st = monoid_star(pair, model.op_elements[i]);
    bool found = false;
    for (std::size_t k = 0; k < model.op_elements.size(); ++k)
      if (monoid_equal(model.op_elements[k], st)) {
        found = true;
        break;
      }
    if (!found) model.op_elements.push_back(st);
  }
  model.star_partner.assign(model.op_elements.size(), 0);
  for (std::size_t i = 0; i < model.op_elements.size(); ++i) {
    SElement st = monoid_star(pair, model.op_elements[i]);
    for (std::size_t k = 0; k < model.op_elements.size(); ++k)
      if (monoid_equal(model.op_elements[k], st)) {
        model.star_partner[i] = k;
        break;
      }
  }

  for (const SElement& a : model.op_elements) {
    // Span-solve the left translates against the Gram matrix; leakage is an
    // error, not a projection.
    ScalarMat r(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) {
      SElement t = monoid_mul(pair, a, generators[i]);
      std::vector<Scalar> b(n, zero);
      for (std::size_t k = 0; k < n; ++k)
        b[k] = phi.eval(monoid_mul(pair, monoid_star(pair, generators[k]), t));
      auto c = gauss_solve(gram, b, tol);
      if (!c)
        throw guard_error("truncation leakage: translate of generator " + std::to_string(i) +
                          " is outside the spanned set");
      Scalar cb = zero;
      for (std::size_t k = 0; k < n; ++k) cb += (*c)[k].conj() * b[k];
      Scalar cgc = zero;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) cgc += (*c)[k].conj() * gram.at(k, l) * (*c)[l];
      Scalar tt = phi.eval(monoid_mul(pair, monoid_star(pair, t), t));
      Scalar resid = tt - cb - cb.conj() + cgc;
      if (!negligible_scalar(resid, std::max(tol, 1e-12)))
        throw guard_error("truncation leakage: residual " + resid.to_string() +
                          " at translate of generator " + std::to_string(i));
      for (std::size_t k = 0; k < n; ++k) r.at(k, i) = (*c)[k];
    }
    ScalarMat m(model.quotient.rank, model.quotient.rank, zero);
    for (std::size_t k = 0; k < model.quotient.rank; ++k) {
      std::vector<Scalar> img = mat_vec(r, model.quotient.qcols[k]);
      std::vector<Scalar> y = quotient_coords(model.quotient, img);
      for (std::size_t l = 0; l < model.quotient.rank; ++l) m.at(l, k) = y[l];
    }
    model.op_matrices.push_back(m);
  }
  return model;
}

GNSVerifyReport gns_verify(const HCPair& pair, const GNSModel& model, const PDFunction& phi,
                           int trials, std::uint64_t seed) {
  GNSVerifyReport report;
  Rng rng(seed);
  const std::size_t r = model.quotient.rank;
  const bool fl = r > 0 && !model.quotient.metric.empty() && model.quotient.metric[0].is_float();
  const double tol = std::max(model.tolerance, 1e-12);

  auto random_coords = [&]() {
    std::vector<Scalar> y;
    for (std::size_t k = 0; k < r; ++k) {
      Rational re = rng.next_rational(), im = rng.next_rational();
      y.push_back(fl ? Scalar::flt(rational_to_double(re), rational_to_double(im))
                     : Scalar(re, im));
    }
    return y;
  };
  auto apply = [&](const ScalarMat& m, const std::vector<Scalar>& y) { return mat_vec(m, y); };

  // Reconstruction on random words of acting generators.
  for (int t = 0; t < trials; ++t) {
    int len = rng.next_int(0, 3);
    SElement s = monoid_identity(pair);
    std::vector<Scalar> vec = model.v0;
    for (int i = 0; i < len; ++i) {
      std::size_t pick = model.op_elements.empty()
                             ? 0
                             : static_cast<std::size_t>(
                                   rng.next_int(0, static_cast<int>(model.op_elements.size()) - 1));
      if (model.op_elements.empty()) break;
      s = monoid_mul(pair, model.op_elements[pick], s);
      vec = apply(model.op_matrices[pick], vec);
    }
    Scalar lhs = metric_inner(model.quotient, vec, model.v0);
    Scalar rhs = phi.eval(s);
    report.reconstruction = std::max(report.reconstruction, cdist(lhs, rhs));
  }

  // *-representation identity.
  for (std::size_t j = 0; j < model.op_elements.size(); ++j) {
    for (int t = 0; t < std::max(1, trials / 2); ++t) {
      std::vector<Scalar> u = random_coords(), w = random_coords();
      Scalar lhs = metric_inner(model.quotient, apply(model.op_matrices[j], u), w);
      Scalar rhs = metric_inner(model.quotient, u,
                                apply(model.op_matrices[model.star_partner[j]], w));
      report.star = std::max(report.star, cdist(lhs, rhs));
    }
  }

  // Unitarity of pure group operators: M^dagger D M = D.
  UEAElement unit_d = UEAElement::unit(pair.spec);
  for (std::size_t j = 0; j < model.op_elements.size(); ++j) {
    if (!(model.op_elements[j].d == unit_d)) continue;
    const ScalarMat& m = model.op_matrices[j];
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) {
        Scalar acc = m.at(0, 0).is_float() ? Scalar::flt(0.0, 0.0) : Scalar(0);
        for (std::size_t a = 0; a < r; ++a)
          acc += m.at(a, k).conj() * model.quotient.metric[a] * m.at(a, l);
        Scalar want = k == l ? model.quotient.metric[k]
                             : (acc.is_float() ? Scalar::flt(0.0, 0.0) : Scalar(0));
        report.unitarity = std::max(report.unitarity, cdist(acc, want));
      }
  }

  for (std::size_t k = 0; k < r; ++k)
    if (model.quotient.parity[k] == 1 && !negligible_scalar(model.v0[k], tol))
      report.v0_even = false;

  report.ok = report.reconstruction <= tol && report.star <= tol && report.unitarity <= tol &&
              report.v0_even;
  if (!report.ok) report.defects.push_back("residuals above tolerance");
  return report;
}

IntertwinerResult gns_intertwiner(const HCPair&, const GNSModel& m1, const GNSModel& m2,
                                  double tol) {
  if (m1.quotient.rank != m2.quotient.rank)
    throw error("rank mismatch between the two models");
  const std::size_t n = m1.generators.size();
  if (m2.generators.size() != n) throw error("generator sets differ in size");
  std::vector<std::size_t> match(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (monoid_equal(m1.generators[i], m2.generators[j])) {
        match[i] = j;
        used[j] = true;
        break;
      }
    }
    if (match[i] == n) throw error("generator sets differ");
  }

  const std::size_t r = m1.quotient.rank;
  const bool fl = r > 0 && m1.quotient.metric[0].is_float();
  const Scalar zero = fl ? Scalar::flt(0.0, 0.0) : Scalar(0);
  IntertwinerResult res;
  res.t = ScalarMat(r, r, zero);
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Scalar> u(n, zero);
    for (std::size_t i = 0; i < n; ++i) u[match[i]] = m1.quotient.qcols[k][i];
    std::vector<Scalar> y = quotient_coords(m2.quotient, u);
    for (std::size_t l = 0; l < r; ++l) res.t.at(l, k) = y[l];
  }

  double worst = 0.0;
  // Isometry: T^dagger D2 T = D1.
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      Scalar acc = zero;
      for (std::size_t a = 0; a < r; ++a)
        acc += res.t.at(a, k).conj() * m2.quotient.metric[a] * res.t.at(a, l);
      Scalar want = k == l ? m1.quotient.metric[k] : zero;
      worst = std::max(worst, cdist(acc, want));
    }
  // Cyclic vector is carried to the cyclic vector.
  {
    std::vector<Scalar> tv = mat_vec(res.t, m1.v0);
    for (std::size_t l = 0; l < r; ++l) worst = std::max(worst, cdist(tv[l], m2.v0[l]));
  }
  // Intertwining on matching acting generators.
  for (std::size_t j = 0; j < m1.op_elements.size(); ++j) {
    std::size_t j2 = m2.op_elements.size();
    for (std::size_t k = 0; k < m2.op_elements.size(); ++k)
      if (monoid_equal(m2.op_elements[k], m1.op_elements[j])) {
        j2 = k;
        break;
      }
    if (j2 == m2.op_elements.size()) continue;
    ScalarMat lhs = res.t * m1.op_matrices[j];
    ScalarMat rhs = m2.op_matrices[j2] * res.t;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) worst = std::max(worst, cdist(lhs.at(a, b), rhs.at(a, b)));
  }
  res.residual = worst;
  res.ok = worst <= std::max(tol, 1e-12);
  if (!res.ok) res.defects.push_back("intertwiner residual above tolerance");
  return res;
}

GNSModel gns_model_to_float(const GNSModel& m) {
  GNSModel r = m;
  r.quotient.gram = mat_to_float(m.quotient.gram);
  r.quotient.ldl.L = mat_to_float(m.quotient.ldl.L);
  r.quotient.ldl.diag = vec_to_float(m.quotient.ldl.diag);
  r.quotient.ldl.witness = vec_to_float(m.quotient.ldl.witness);
  for (auto& c : r.quotient.qcols) c = vec_to_float(c);
  r.quotient.metric = vec_to_float(m.quotient.metric);
  for (auto& om : r.op_matrices) om = mat_to_float(om);
  r.v0 = vec_to_float(m.v0);
  return r;
}

}  // namespace sup
