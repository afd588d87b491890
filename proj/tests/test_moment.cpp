#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "super/gns.hpp"
#include "super/hcpair.hpp"
#include "super/moment.hpp"
#include "super/monoid.hpp"
#include "super/uea.hpp"

using namespace sup;

namespace {

// lambda(z^k) = w^k on clifford(1), every x-monomial absent (hence zero).
MomentFunctional zpower_table(const Scalar& w, std::uint32_t cap) {
  MomentFunctional lam;
  lam.degree_cap = cap;
  Scalar val(1);
  for (std::uint32_t k = 0; k <= cap; ++k) {
    lam.values[PBWMonomial{k, 0}] = val;
    val *= w;
  }
  return lam;
}

MomentFunctional clifford_table(std::uint32_t cap) {
  return zpower_table(Scalar(Rational(0), Rational(2)), cap);
}

// Character state: lambda factors over the even generators, odd ones vanish.
MomentFunctional character_table(const LieSuperalgebraSpec& spec,
                                 const std::vector<Scalar>& evals, std::uint32_t cap) {
  MomentFunctional lam;
  lam.degree_cap = cap;
  for (const PBWMonomial& m : enumerate_monomials(spec, cap)) {
    bool odd = false;
    Scalar val(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (spec.basis_parity(i) == Parity::Odd && m[i] > 0) odd = true;
      for (std::uint32_t e = 0; e < m[i]; ++e) val *= evals[i];
    }
    if (!odd) lam.values[m] = val;
  }
  return lam;
}

UEAElement elem(const LieSuperalgebraSpec& spec, const PBWMonomial& m) {
  UEAElement e(spec);
  e.add_term(m, Scalar(1));
  return e;
}

FiniteDimRep clifford_rep() {
  FiniteDimRep rep;
  rep.dim_even = 1;
  rep.dim_odd = 1;
  ScalarMat rz(2, 2, Scalar::flt(0.0, 0.0));
  rz.at(0, 0) = Scalar::flt(0.0, 2.0);
  rz.at(1, 1) = Scalar::flt(0.0, 2.0);
  ScalarMat rx(2, 2, Scalar::flt(0.0, 0.0));
  const double c = std::sqrt(0.5);
  rx.at(0, 1) = Scalar::flt(c, c);
  rx.at(1, 0) = Scalar::flt(c, c);
  rep.rho = {rz, rx};
  rep.pi = [](const GroupElement& g) {
    double t = rational_to_double(g.coords.at(0));
    ScalarMat m(2, 2, Scalar::flt(0.0, 0.0));
    m.at(0, 0) = Scalar::flt(std::cos(2.0 * t), std::sin(2.0 * t));
    m.at(1, 1) = m.at(0, 0);
    return m;
  };
  return rep;
}

// One-dimensional *-representations of the remaining fixtures: the odd
// symmetry forces rho(x) = 0 in finite dimensions, so these are characters.
FiniteDimRep character_rep(const LieSuperalgebraSpec& spec, const std::vector<double>& weights,
                           std::function<double(const GroupElement&)> phase) {
  FiniteDimRep rep;
  rep.dim_even = 1;
  rep.dim_odd = 0;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    ScalarMat m(1, 1, Scalar::flt(0.0, 0.0));
    if (spec.basis_parity(i) == Parity::Even) m.at(0, 0) = Scalar::flt(0.0, weights[i]);
    rep.rho.push_back(m);
  }
  rep.pi = [phase](const GroupElement& g) {
    double t = phase(g);
    return ScalarMat(1, 1, Scalar::flt(std::cos(t), std::sin(t)));
  };
  return rep;
}

double sdist(const Scalar& a, std::complex<double> want) {
  return std::abs(a.to_complex() - want);
}

double mat_defect(const ScalarMat& a, const ScalarMat& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a.at(i, j).to_complex() - b.at(i, j).to_complex()));
  return worst;
}

}  // namespace

TEST_CASE("moment_value and moment_eval read the table through normal forms") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);

  CHECK(moment_value(spec, lam, {1, 0}) == Scalar(Rational(0), Rational(2)));
  CHECK(moment_value(spec, lam, {3, 0}) == Scalar(Rational(0), Rational(-8)));
  CHECK(moment_value(spec, lam, {0, 1}) == Scalar(0));
  CHECK(moment_value(spec, lam, {1, 1}) == Scalar(0));
  CHECK_THROWS_AS(moment_value(spec, lam, {7, 0}), guard_error);
  CHECK_THROWS_AS(moment_value(spec, lam, {1}), error);

  // x* x = -i x x = -i/2 z, so the state value is 1.
  UEAElement x = UEAElement::generator(spec, 1);
  UEAElement xstarx = uea_mul(spec, uea_star(spec, x), x);
  CHECK(moment_eval(spec, lam, xstarx) == Scalar(1));

  MomentFunctional gap = lam;
  gap.values.erase(PBWMonomial{5, 0});
  try {
    moment_value(spec, gap, {5, 0});
    FAIL("expected incomplete_error");
  } catch (const incomplete_error& e) {
    REQUIRE(e.missing.size() == 1);
    CHECK(e.missing[0] == "z^5");
  }
}

TEST_CASE("moment_check accepts the clifford state at degree three") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);
  MomentReport rep = moment_check(spec, lam, 1e-12);
  CHECK(rep.ok);
  CHECK(rep.even_ok);
  CHECK(rep.hermitian_ok);
  CHECK(rep.psd);
  CHECK(rep.d == 3);
  CHECK(rep.basis.size() == 7);
  CHECK(rep.defects.empty());
  // The state is the C^{1|1} vector state, so the Gram has rank two.
  CHECK(rep.ldl.rank == 2);
  CHECK(sdist(rep.gram.at(0, 2), {0.0, 2.0}) == 0.0);
}

TEST_CASE("a sign-flipped lambda(z) is indefinite with an odd witness") {
  LieSuperalgebraSpec spec = make_clifford1();

  // Small table: d = 1, basis {1, z, x}; the only negativity is lam(x* x).
  MomentFunctional bad2 = zpower_table(Scalar(Rational(0), Rational(-2)), 2);
  MomentReport r2 = moment_check(spec, bad2, 1e-12);
  CHECK_FALSE(r2.ok);
  CHECK(r2.even_ok);
  CHECK(r2.hermitian_ok);
  CHECK_FALSE(r2.psd);
  // Basis order is (1, x, z); the witness sits on the x direction.
  REQUIRE(r2.ldl.witness.size() == 3);
  CHECK(r2.ldl.witness[0].is_zero());
  CHECK_FALSE(r2.ldl.witness[1].is_zero());
  CHECK(r2.ldl.witness[2].is_zero());
  CHECK(r2.ldl.witness_value.to_complex().real() < 0.0);
  bool witnessed = false;
  for (const auto& d : r2.defects)
    if (d.find("negative direction") != std::string::npos && d.find("(x)") != std::string::npos)
      witnessed = true;
  CHECK(witnessed);

  // Full-depth table: still indefinite, witness supported on odd monomials.
  MomentFunctional bad6 = zpower_table(Scalar(Rational(0), Rational(-2)), 6);
  MomentReport r6 = moment_check(spec, bad6, 1e-12);
  CHECK_FALSE(r6.psd);
  for (std::size_t k = 0; k < r6.basis.size(); ++k) {
    bool odd = (r6.basis[k].size() > 1 && r6.basis[k][1] % 2 == 1);
    if (!odd) CHECK(r6.ldl.witness[k].is_zero());
  }
}

TEST_CASE("evenness and Hermitian-symmetry defects are reported separately") {
  LieSuperalgebraSpec spec = make_clifford1();

  MomentFunctional oddval = clifford_table(6);
  oddval.values[PBWMonomial{0, 1}] = Scalar(1);
  MomentReport r1 = moment_check(spec, oddval, 1e-12);
  CHECK_FALSE(r1.ok);
  CHECK_FALSE(r1.even_ok);
  CHECK_FALSE(r1.psd);
  bool seen = false;
  for (const auto& d : r1.defects)
    if (d.find("odd monomial") != std::string::npos) seen = true;
  CHECK(seen);

  MomentFunctional skew = clifford_table(6);
  skew.values[PBWMonomial{1, 0}] = Scalar(Rational(1), Rational(1));
  MomentReport r2 = moment_check(spec, skew, 1e-12);
  CHECK_FALSE(r2.ok);
  CHECK_FALSE(r2.hermitian_ok);
  seen = false;
  for (const auto& d : r2.defects)
    if (d.find("lam(D*) != conj(lam(D))") != std::string::npos) seen = true;
  CHECK(seen);
}

TEST_CASE("an underfilled table raises one incompleteness error listing every gap") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);
  for (std::uint32_t k = 3; k <= 6; ++k) lam.values.erase(PBWMonomial{k, 0});
  try {
    moment_check(spec, lam, 1e-12);
    FAIL("expected incomplete_error");
  } catch (const incomplete_error& e) {
    REQUIRE(e.missing.size() == 4);
    CHECK(std::find(e.missing.begin(), e.missing.end(), "z^3") != e.missing.end());
    CHECK(std::find(e.missing.begin(), e.missing.end(), "z^6") != e.missing.end());
  }
}

TEST_CASE("states extracted from the fixture representations pass moment_check") {
  struct Case {
    HCPair pair;
    FiniteDimRep rep;
    std::vector<Scalar> v;
  };
  std::vector<Case> cases;
  {
    HCPair pair = make_clifford_pair();
    cases.push_back({pair, clifford_rep(), {Scalar::flt(1.0, 0.0), Scalar::flt(0.0, 0.0)}});
  }
  {
    HCPair pair = make_abelian_pair(1, 1);
    FiniteDimRep rep = character_rep(pair.spec, {3.0, 0.0}, [](const GroupElement& g) {
      return 3.0 * rational_to_double(g.coords.at(0));
    });
    cases.push_back({pair, rep, {Scalar::flt(1.0, 0.0)}});
  }
  {
    HCPair pair = make_scaling_pair();
    FiniteDimRep rep = character_rep(pair.spec, {1.0, 0.0}, [](const GroupElement& g) {
      return std::log(rational_to_double(g.coords.at(0)));
    });
    cases.push_back({pair, rep, {Scalar::flt(1.0, 0.0)}});
  }
  {
    HCPair pair = make_heisenberg_pair();
    FiniteDimRep rep =
        character_rep(pair.spec, {1.0, 2.0, 0.0}, [](const GroupElement& g) {
          return rational_to_double(g.coords.at(0)) + 2.0 * rational_to_double(g.coords.at(1));
        });
    cases.push_back({pair, rep, {Scalar::flt(1.0, 0.0)}});
  }

  for (const Case& c : cases) {
    HCReport rr = check_rep(c.pair.spec, c.rep, 1e-12, {c.pair.group->identity()});
    CHECK(rr.ok);
    PDFunction phi = pdfunction_from_rep(c.pair.spec, c.rep, c.v, c.v);
    MomentFunctional lam = moment_from_pdfunction(c.pair, phi, 6);
    MomentReport rep = moment_check(c.pair.spec, lam, 1e-9);
    CHECK(rep.ok);
    CHECK(rep.d == 3);
  }
}

TEST_CASE("moment_gns produces block maps with exact bracket relations") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);

  TruncatedGNS t = moment_gns(spec, lam, 3, 1e-12);
  CHECK(t.d == 3);
  CHECK(t.basis_full.size() == 7);
  CHECK(t.basis_mid.size() == 5);
  CHECK(t.basis_low.size() == 3);
  CHECK(t.full.rank == 2);
  CHECK(t.mid.rank == 2);
  CHECK(t.low.rank == 2);
  CHECK(t.verdict == "positive-at-degree-3");
  CHECK(t.bracket_report.ok);
  CHECK(t.symmetry_report.ok);

  REQUIRE(t.rho_mid_full.size() == 2);
  CHECK(t.rho_mid_full[0].rows() == t.full.rank);
  CHECK(t.rho_mid_full[0].cols() == t.mid.rank);
  CHECK(t.rho_low_mid[0].rows() == t.mid.rank);
  CHECK(t.rho_low_mid[0].cols() == t.low.rank);

  // Left multiplication commutes with the block inclusions.
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    ScalarMat via_mid = t.rho_mid_full[i] * t.incl_low_mid;
    ScalarMat via_incl = t.incl_mid_full * t.rho_low_mid[i];
    CHECK(mat_defect(via_mid, via_incl) < 1e-15);
  }

  // The float-kind table goes through the same pipeline.
  HCPair pair = make_clifford_pair();
  FiniteDimRep rep = clifford_rep();
  std::vector<Scalar> v = {Scalar::flt(1.0, 0.0), Scalar::flt(0.0, 0.0)};
  MomentFunctional lamf = moment_from_pdfunction(pair, pdfunction_from_rep(pair.spec, rep, v, v), 6);
  TruncatedGNS tf = moment_gns(pair.spec, lamf, 2, 1e-9);
  CHECK(tf.full.rank == 2);
  CHECK(tf.mid.rank == 2);
  CHECK(tf.low.rank == 1);
  CHECK(tf.bracket_report.ok);
  CHECK(tf.symmetry_report.ok);
}

TEST_CASE("moment_gns guard conditions") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);
  CHECK_THROWS_AS(moment_gns(spec, lam, 1, 1e-12), guard_error);
  CHECK_THROWS_AS(moment_gns(spec, lam, 4, 1e-12), guard_error);

  MomentFunctional bad = zpower_table(Scalar(Rational(0), Rational(-2)), 6);
  CHECK_THROWS_AS(moment_gns(spec, bad, 2, 1e-12), guard_error);
}

TEST_CASE("the unit state gives a rank-one quotient with nilpotent action") {
  LieSuperalgebraSpec spec = make_abelian(1, 1);
  std::vector<Scalar> evals = {Scalar(0), Scalar(0)};
  MomentFunctional lam = character_table(spec, evals, 6);
  MomentReport rep = moment_check(spec, lam, 1e-12);
  CHECK(rep.ok);
  CHECK(rep.ldl.rank == 1);

  TruncatedGNS t = moment_gns(spec, lam, 2, 1e-12);
  CHECK(t.full.rank == 1);
  CHECK(t.mid.rank == 1);
  CHECK(t.low.rank == 1);
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    CHECK(t.rho_mid_full[i].at(0, 0).is_zero());
    CHECK(t.rho_low_mid[i].at(0, 0).is_zero());
  }
  CHECK(t.bracket_report.ok);
  CHECK(t.symmetry_report.ok);
}

TEST_CASE("a degenerate direction lowers the rank without an error") {
  LieSuperalgebraSpec spec = make_heisenberg3();
  // Character with two equal weights: many null directions in every block.
  std::vector<Scalar> evals = {Scalar(Rational(0), Rational(1)), Scalar(Rational(0), Rational(1)),
                               Scalar(0)};
  MomentFunctional lam = character_table(spec, evals, 4);
  MomentReport rep = moment_check(spec, lam, 1e-12);
  CHECK(rep.ok);
  CHECK(rep.ldl.rank == 1);
  CHECK(rep.basis.size() == 10);

  TruncatedGNS t = moment_gns(spec, lam, 2, 1e-12);
  CHECK(t.full.rank == 1);
  CHECK(t.bracket_report.ok);
}

TEST_CASE("growth diagnostic on the clifford central direction") {
  LieSuperalgebraSpec spec = make_clifford1();
  MomentFunctional lam = clifford_table(6);
  UEAElement one = UEAElement::unit(spec);

  GrowthReport g = growth_diagnostic(spec, lam, one, one, 0, 6);
  REQUIRE(g.a.size() == 7);
  double fact = 1.0;
  for (std::uint32_t n = 0; n <= 6; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(g.a[n] - std::pow(2.0, double(n)) / fact) < 1e-12);
  }
  REQUIRE(g.ratios.size() == 6);
  for (std::size_t n = 0; n < 6; ++n)
    CHECK(std::abs(g.ratios[n] - 2.0 / double(n + 1)) < 1e-12);
  CHECK(g.heuristic);
  CHECK(std::abs(g.partial_sum - (1.0 + 2.0 + 2.0 + 4.0 / 3 + 2.0 / 3 + 4.0 / 15 + 4.0 / 45)) <
        1e-12);

  GrowthReport single = growth_diagnostic(spec, lam, one, one, 0, 0);
  CHECK(single.a.size() == 1);
  CHECK(single.ratios.empty());
  CHECK(single.a[0] == 1.0);
}

TEST_CASE("growth diagnostic tails and guards") {
  LieSuperalgebraSpec heis = make_heisenberg3();
  std::vector<Scalar> evals = {Scalar(Rational(0), Rational(1)), Scalar(Rational(0), Rational(2)),
                               Scalar(0)};
  MomentFunctional lam = character_table(heis, evals, 6);
  UEAElement one = UEAElement::unit(heis);

  // The central direction is annihilated: a_0 = 1 and the tail vanishes.
  GrowthReport g = growth_diagnostic(heis, lam, one, one, 2, 4);
  REQUIRE(g.a.size() == 5);
  CHECK(g.a[0] == 1.0);
  for (std::size_t n = 1; n < g.a.size(); ++n) CHECK(g.a[n] == 0.0);
  REQUIRE(g.ratios.size() == 1);
  CHECK(g.ratios[0] == 0.0);

  LieSuperalgebraSpec cl = make_clifford1();
  MomentFunctional clam = clifford_table(6);
  UEAElement cone = UEAElement::unit(cl);
  CHECK_THROWS_AS(growth_diagnostic(cl, clam, cone, cone, 1, 2), guard_error);
  CHECK_THROWS_AS(growth_diagnostic(cl, clam, cone, cone, 0, 7), guard_error);
  UEAElement z2 = elem(cl, {2, 0});
  CHECK_THROWS_AS(growth_diagnostic(cl, clam, z2, cone, 0, 5), guard_error);
  CHECK_THROWS_AS(growth_diagnostic(cl, clam, cone, cone, 9, 1), error);
}

TEST_CASE("moment tables and positive definite functions round-trip") {
  HCPair pair = make_clifford_pair();
  MomentFunctional lam = clifford_table(6);
  PDFunction phi = pdfunction_from_moment(pair, lam);
  CHECK(phi.exact);

  // Values at the identity match the table; nontrivial group parts need a
  // character.
  UEAElement z = UEAElement::generator(pair.spec, 0);
  CHECK(phi.eval(SElement{pair.group->identity(), z}) == Scalar(Rational(0), Rational(2)));
  CHECK_THROWS_AS(phi.eval(SElement{GroupElement{{Rational(1)}}, z}), capability_error);

  MomentFunctional back = moment_from_pdfunction(pair, phi, 6);
  CHECK(back.degree_cap == lam.degree_cap);
  CHECK(back.values == lam.values);

  PDFunction chi = pdfunction_from_moment(pair, lam, [](const GroupElement& g) {
    double t = rational_to_double(g.coords.at(0));
    return Scalar::flt(std::cos(2.0 * t), std::sin(2.0 * t));
  });
  CHECK_FALSE(chi.exact);
  Scalar val = chi.eval(SElement{GroupElement{{Rational(1)}}, UEAElement::unit(pair.spec)});
  CHECK(sdist(val, {std::cos(2.0), std::sin(2.0)}) < 1e-14);
}

TEST_CASE("the moment model and the representation model are unitarily equivalent") {
  HCPair pair = make_clifford_pair();
  MomentFunctional lam = clifford_table(6);
  PDFunction phim = pdfunction_from_moment(pair, lam);

  FiniteDimRep rep = clifford_rep();
  std::vector<Scalar> v = {Scalar::flt(1.0, 0.0), Scalar::flt(0.0, 0.0)};
  PDFunction phir = pdfunction_from_rep(pair.spec, rep, v, v);

  GroupElement e = pair.group->identity();
  std::vector<SElement> gens;
  for (const PBWMonomial& m : enumerate_monomials(pair.spec, 2))
    gens.push_back(SElement{e, elem(pair.spec, m)});
  std::vector<SElement> acting = {SElement{e, UEAElement::generator(pair.spec, 1)},
                                  SElement{e, UEAElement::generator(pair.spec, 0)}};

  GNSModel mm = gns_build(pair, phim, gens, acting, 1e-9);
  GNSModel mr = gns_build(pair, phir, gens, acting, 1e-9);
  CHECK(mm.quotient.rank == 2);
  CHECK(mr.quotient.rank == 2);

  GNSVerifyReport vm = gns_verify(pair, mm, phim, 60, 13);
  CHECK(vm.ok);

  IntertwinerResult res = gns_intertwiner(pair, gns_model_to_float(mm), mr, 1e-9);
  CHECK(res.ok);
  CHECK(res.residual < 1e-9);

  // The truncated construction agrees with the module rank.
  TruncatedGNS t = moment_gns(pair.spec, lam, 3, 1e-12);
  CHECK(t.mid.rank == mm.quotient.rank);
}
