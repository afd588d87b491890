#include "super/hcpair.hpp"

#include "super/poly.hpp"

namespace sup {

void validate_soul(const SuperTensor& n) {
  if (!n.is_lambda_even()) throw error("soul must be Lambda-even");
  if (n.has_body()) throw error("soul must be supported on Lambda^+");
}

SuperTensor ad_tensor(const HCPair& pair, const GroupElement& g, const SuperTensor& n) {
  ScalarMat a = pair.group->ad(g);
  SuperTensor out = n - n;
  for (const auto& [key, c] : n.terms()) {
    for (std::size_t j = 0; j < pair.spec.dim(); ++j) {
      const Scalar& m = a.at(j, key.first);
      if (!m.is_zero()) out.add_term(j, key.second, c * m);
    }
  }
  return out;
}

LambdaPoint lambda_identity(const HCPair& pair, int lambda_n) {
  return LambdaPoint{pair.group->identity(), SuperTensor(pair.spec, lambda_n, Scalar(0))};
}

LambdaPoint lambda_mul(const HCPair& pair, const LambdaPoint& p, const LambdaPoint& q) {
  validate_soul(p.soul);
  validate_soul(q.soul);
  if (p.soul.lambda_n() != q.soul.lambda_n()) throw error("lambda points over different Lambda");
  GroupElement g = pair.group->multiply(p.g, q.g);
  SuperTensor moved = ad_tensor(pair, pair.group->invert(q.g), p.soul);
  return LambdaPoint{g, bch(moved, q.soul, pair.spec)};
}

LambdaPoint lambda_inv(const HCPair& pair, const LambdaPoint& p) {
  validate_soul(p.soul);
  return LambdaPoint{pair.group->invert(p.g), -ad_tensor(pair, p.g, p.soul)};
}

LambdaPoint lambda_exp(const HCPair& pair, const SuperTensor& v) {
  if (!v.is_lambda_even()) throw error("exp argument must be Lambda-even");
  RatVec v0(pair.spec.even_dim(), Rational(0));
  bool has_body = false;
  for (const auto& [key, c] : v.terms()) {
    if (key.second != 0) continue;
    // Lambda-even with empty index tuple forces an even basis element.
    if (!c.is_exact() || c.exact_im() != 0)
      throw error("body coordinates must be exact rationals");
    v0[key.first] = c.exact_re();
    has_body = true;
  }
  GroupElement g;
  if (has_body)
    g = pair.group->exp(v0);
  else
    g = pair.group->identity();
  SuperTensor minus_body(pair.spec, v.lambda_n(), Scalar(0));
  for (std::size_t i = 0; i < v0.size(); ++i)
    if (v0[i] != 0) minus_body.add_term(i, 0, Scalar(-v0[i]));
  SuperTensor w = bch(minus_body, v, pair.spec);
  validate_soul(w);
  return LambdaPoint{g, w};
}

SuperTensor transport_tensor(const LieSuperalgebraSpec& spec, const GrMorphism& rho,
                             const SuperTensor& n) {
  if (n.lambda_n() != rho.source_n) throw error("morphism source does not match the soul");
  SuperTensor out(spec, rho.target_n, Scalar(0));
  for (const auto& [key, c] : n.terms()) {
    GrassmannElement lam =
        GrassmannElement::monomial(rho.source_n, key.second, Scalar(1), Scalar(0));
    GrassmannElement image = gr_apply(rho, lam);
    for (const auto& [mask, c2] : image.terms()) out.add_term(key.first, mask, c * c2);
  }
  return out;
}

LambdaPoint lambda_functor(const HCPair& pair, const GrMorphism& rho, const LambdaPoint& p) {
  validate_soul(p.soul);
  SuperTensor moved = transport_tensor(pair.spec, rho, p.soul);
  validate_soul(moved);
  return LambdaPoint{p.g, moved};
}

namespace {

bool mats_equal(const ScalarMat& a, const ScalarMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a.at(i, j) - b.at(i, j)).is_zero()) return false;
  return true;
}

}  // namespace

HCReport validate_hcpair(const HCPair& pair, int samples, std::uint64_t seed) {
  HCReport rep;
  Rng rng(seed);
  const LieSuperalgebraSpec& spec = pair.spec;
  const GroupModel& grp = *pair.group;
  const std::size_t d = spec.dim();
  auto flag = [&](const std::string& msg) {
    rep.ok = false;
    rep.defects.push_back(msg);
  };

  // Group axioms.
  for (int s = 0; s < samples; ++s) {
    GroupElement a = grp.random_element(rng);
    GroupElement b = grp.random_element(rng);
    GroupElement c = grp.random_element(rng);
    if (grp.multiply(grp.multiply(a, b), c) != grp.multiply(a, grp.multiply(b, c))) {
      flag("group multiplication is not associative (sample " + std::to_string(s) + ")");
      break;
    }
    if (grp.multiply(a, grp.invert(a)) != grp.identity()) {
      flag("a * a^{-1} is not the identity (sample " + std::to_string(s) + ")");
      break;
    }
    if (grp.multiply(grp.identity(), a) != a) {
      flag("identity is not neutral (sample " + std::to_string(s) + ")");
      break;
    }
  }

  // Ad: unital homomorphism into grading-preserving maps.
  if (!mats_equal(grp.ad(grp.identity()), ScalarMat::identity(d, Scalar(0))))
    flag("Ad(1) is not the identity map");
  for (int s = 0; s < samples; ++s) {
    GroupElement a = grp.random_element(rng);
    GroupElement b = grp.random_element(rng);
    if (!mats_equal(grp.ad(grp.multiply(a, b)), grp.ad(a) * grp.ad(b))) {
      flag("Ad is not a homomorphism (sample " + std::to_string(s) + ")");
      break;
    }
  }
  for (int s = 0; s < samples; ++s) {
    GroupElement a = grp.random_element(rng);
    ScalarMat m = grp.ad(a);
    bool bad = false;
    for (std::size_t i = 0; i < d && !bad; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!m.at(i, j).is_zero() && spec.basis_parity(i) != spec.basis_parity(j)) {
          flag("Ad(g) does not preserve the grading (sample " + std::to_string(s) + ")");
          bad = true;
          break;
        }
    if (bad) break;
  }

  // Bracket automorphism on basis pairs for sampled g.
  for (int s = 0; s < samples; ++s) {
    GroupElement g = grp.random_element(rng);
    ScalarMat m = grp.ad(g);
    bool bad = false;
    for (std::size_t i = 0; i < d && !bad; ++i)
      for (std::size_t j = 0; j < d && !bad; ++j) {
        RatVec lhs = apply_exact(m, spec.brackets[i][j]);
        RatVec gi = apply_exact(m, spec.basis_vec(i));
        RatVec gj = apply_exact(m, spec.basis_vec(j));
        RatVec rhs = spec.bracket_vec(gi, gj);
        if (lhs != rhs) {
          flag("Ad(g) is not a bracket automorphism at (" + spec.name_of(i) + "," +
               spec.name_of(j) + "), sample " + std::to_string(s));
          bad = true;
        }
      }
    if (bad) break;
  }

  // Jet identity: the t-linear part of Ad(e^{t x}) y equals [x, y].
  for (std::size_t f = 0; f < spec.even_dim(); ++f) {
    PolyMat jet = pair.group->ad_exp_jet(f, 1);
    bool bad = false;
    for (std::size_t i = 0; i < d && !bad; ++i)
      for (std::size_t j = 0; j < d && !bad; ++j) {
        Scalar lin = jet.at(i, j).coeff({1});
        Scalar cons = jet.at(i, j).coeff({0});
        Scalar expect_cons = (i == j) ? Scalar(1) : Scalar(0);
        if (!(cons - expect_cons).is_zero()) {
          flag("Ad(e^{t " + spec.name_of(f) + "}) does not start at the identity");
          bad = true;
          break;
        }
        if (!(lin - Scalar(spec.brackets[f][j][i])).is_zero()) {
          flag("jet of Ad(e^{t " + spec.name_of(f) + "}) at " + spec.name_of(j) +
               " differs from [" + spec.name_of(f) + "," + spec.name_of(j) + "]");
          bad = true;
          break;
        }
      }
  }
  return rep;
}

HCReport check_bullet_additivity(const HCPair& pair, int lambda_n, int samples,
                                 std::uint64_t seed) {
  HCReport rep;
  if (lambda_n < 1 || lambda_n > kMaxGrassmannGenerators)
    throw error("bullet check needs at least one generator");
  Rng rng(seed);
  const std::uint64_t top = std::uint64_t(1) << (lambda_n - 1);
  for (int s = 0; s < samples; ++s) {
    // Souls supported on masks containing the last generator: any two such
    // monomials multiply to zero, so bch collapses to the sum.
    SuperTensor x(pair.spec, lambda_n, Scalar(0));
    SuperTensor y(pair.spec, lambda_n, Scalar(0));
    for (int t = 0; t < 3; ++t) {
      for (SuperTensor* target : {&x, &y}) {
        std::size_t i = static_cast<std::size_t>(rng.next_below(pair.spec.dim()));
        int pi = pair.spec.basis_parity(i) == Parity::Odd ? 1 : 0;
        std::uint64_t low = rng.next_below(top);
        if ((__builtin_popcountll(low | top) + pi) % 2 != 0) {
          if (lambda_n == 1) continue;
          low ^= 1;
        }
        std::uint64_t mask = low | top;
        if ((__builtin_popcountll(mask) + pi) % 2 != 0) continue;
        target->add_term(i, mask, Scalar(rng.next_rational(2, 2)));
      }
    }
    LambdaPoint p{pair.group->identity(), x};
    LambdaPoint q{pair.group->identity(), y};
    LambdaPoint prod = lambda_mul(pair, p, q);
    if (prod.soul != x + y || prod.g != pair.group->identity()) {
      rep.ok = false;
      rep.defects.push_back("bullet product differs from the sum at sample " +
                            std::to_string(s));
    }
  }
  return rep;
}

HCPair make_clifford_pair() {
  HCPair pair;
  pair.spec = make_clifford1();
  pair.group = std::make_shared<NilpotentExp>(pair.spec);
  return pair;
}

HCPair make_scaling_pair() {
  HCPair pair;
  pair.spec = make_scaling11();
  // Weights: a has weight 0, x has weight 1 (Ad(g)x = g x).
  pair.group = std::make_shared<ScalingTorus>(pair.spec,
                                              std::vector<std::vector<long>>{{0, 1}});
  return pair;
}

HCPair make_abelian_pair(std::size_t p, std::size_t q) {
  HCPair pair;
  pair.spec = make_abelian(p, q);
  pair.group = std::make_shared<NilpotentExp>(pair.spec);
  return pair;
}

HCPair make_heisenberg_pair() {
  HCPair pair;
  pair.spec = make_heisenberg3();
  pair.group = std::make_shared<NilpotentExp>(pair.spec);
  return pair;
}

}  // namespace sup
