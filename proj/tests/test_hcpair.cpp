#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>
#include "super/group.hpp"
#include "super/hcpair.hpp"
#include "super/rng.hpp"

using namespace sup;

namespace {

// Random soul: Lambda-even tensor supported on nonempty Grassmann masks.
SuperTensor random_soul(const HCPair& pair, int lambda_n, Rng& rng) {
  SuperTensor t(pair.spec, lambda_n, Scalar(0));
  for (std::size_t b = 0; b < pair.spec.dim(); ++b)
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << lambda_n); ++m) {
      if (t.term_parity(b, m) != 0) continue;
      if (rng.next_int(0, 2) != 0) continue;
      t.add_term(b, m, Scalar(rng.next_rational()));
    }
  return t;
}

LambdaPoint random_point(const HCPair& pair, int lambda_n, Rng& rng) {
  return LambdaPoint{pair.group->random_element(rng), random_soul(pair, lambda_n, rng)};
}

bool point_equal(const LambdaPoint& p, const LambdaPoint& q) {
  return p.g == q.g && p.soul == q.soul;
}

// Torus with the corrupted weight Ad(g)x = g^2 x; the jet identity (iv)
// must flag it against [a,x] = x.
HCPair corrupted_scaling_pair() {
  HCPair pair;
  pair.spec = make_scaling11();
  pair.group =
      std::make_shared<ScalingTorus>(pair.spec, std::vector<std::vector<long>>{{0, 2}});
  return pair;
}

}  // namespace

TEST_CASE("fixture pairs validate") {
  for (const HCPair& pair : {make_clifford_pair(), make_scaling_pair(), make_abelian_pair(1, 1),
                             make_heisenberg_pair()}) {
    HCReport rep = validate_hcpair(pair, 40, 1234);
    CAPTURE(pair.group->name());
    for (const auto& d : rep.defects) CAPTURE(d);
    CHECK(rep.ok);
  }
}

TEST_CASE("the corrupted scaling pair is rejected at the jet identity") {
  HCReport rep = validate_hcpair(corrupted_scaling_pair(), 40, 1234);
  REQUIRE(!rep.ok);
  bool jet_defect = false;
  for (const auto& d : rep.defects)
    if (d.find("jet") != std::string::npos) jet_defect = true;
  CHECK(jet_defect);
}

TEST_CASE("Lambda points form a group") {
  Rng rng(20240);
  std::vector<HCPair> pairs = {make_clifford_pair(), make_scaling_pair(),
                               make_abelian_pair(2, 2), make_heisenberg_pair()};
  int done = 0;
  while (done < 200) {
    const HCPair& pair = pairs[std::size_t(done) % pairs.size()];
    int n = int(rng.next_int(2, 4));
    LambdaPoint p = random_point(pair, n, rng);
    LambdaPoint q = random_point(pair, n, rng);
    LambdaPoint r = random_point(pair, n, rng);
    ++done;

    LambdaPoint left = lambda_mul(pair, lambda_mul(pair, p, q), r);
    LambdaPoint right = lambda_mul(pair, p, lambda_mul(pair, q, r));
    CHECK(point_equal(left, right));

    LambdaPoint e = lambda_identity(pair, n);
    CHECK(point_equal(lambda_mul(pair, e, p), p));
    CHECK(point_equal(lambda_mul(pair, p, e), p));
    CHECK(point_equal(lambda_mul(pair, p, lambda_inv(pair, p)), e));
    CHECK(point_equal(lambda_mul(pair, lambda_inv(pair, p), p), e));
  }
}

TEST_CASE("the body subgroup embeds") {
  HCPair pair = make_clifford_pair();
  Rng rng(31);
  for (int s = 0; s < 20; ++s) {
    GroupElement g = pair.group->random_element(rng);
    GroupElement h = pair.group->random_element(rng);
    LambdaPoint pg{g, SuperTensor(pair.spec, 3, Scalar(0))};
    LambdaPoint ph{h, SuperTensor(pair.spec, 3, Scalar(0))};
    LambdaPoint prod = lambda_mul(pair, pg, ph);
    CHECK(prod.g == pair.group->multiply(g, h));
    CHECK(prod.soul.is_zero());
  }
}

TEST_CASE("the clifford product of two odd soul generators") {
  HCPair pair = make_clifford_pair();
  SuperTensor s1(pair.spec, 2, Scalar(0)), s2(pair.spec, 2, Scalar(0));
  s1.add_term(1, 0b01, Scalar(1));
  s2.add_term(1, 0b10, Scalar(1));
  GroupElement e = pair.group->identity();
  LambdaPoint prod = lambda_mul(pair, LambdaPoint{e, s1}, LambdaPoint{e, s2});
  SuperTensor expect = s1 + s2;
  expect.add_term(0, 0b11, Scalar(Rational(-1, 2)));
  CHECK(prod.g == e);
  CHECK(prod.soul == expect);

  // Generator swap flips the sign of the lambda1 lambda2 term.
  GrMorphism swap = gr_permutation(2, {2, 1});
  LambdaPoint swapped = lambda_functor(pair, swap, prod);
  SuperTensor expect_swapped = s1 + s2;
  expect_swapped.add_term(0, 0b11, Scalar(Rational(1, 2)));
  CHECK(swapped.soul == expect_swapped);
}

TEST_CASE("lambda_exp splits body and soul") {
  HCPair pair = make_clifford_pair();
  SuperTensor soul(pair.spec, 2, Scalar(0));
  soul.add_term(1, 0b01, Scalar(1));
  LambdaPoint p = lambda_exp(pair, soul);
  CHECK(p.g == pair.group->identity());
  CHECK(p.soul == soul);

  CHECK(point_equal(lambda_exp(pair, SuperTensor(pair.spec, 2, Scalar(0))),
                    lambda_identity(pair, 2)));

  HCPair ab = make_abelian_pair(1, 1);
  SuperTensor v(ab.spec, 2, Scalar(0));
  v.add_term(0, 0, Scalar(Rational(3, 2)));  // body p-direction
  v.add_term(1, 0b01, Scalar(1));            // soul x lambda1
  LambdaPoint q = lambda_exp(ab, v);
  CHECK(q.g == ab.group->exp(RatVec{Rational(3, 2)}));
  SuperTensor vs = v.soul();
  CHECK(q.soul == vs);
}

TEST_CASE("one parameter property of lambda_exp") {
  Rng rng(606);
  for (const HCPair& pair : {make_clifford_pair(), make_heisenberg_pair()}) {
    for (int s = 0; s < 20; ++s) {
      SuperTensor v = random_soul(pair, 3, rng);
      for (std::size_t i = 0; i < pair.spec.even_dim(); ++i)
        v.add_term(i, 0, Scalar(rng.next_rational()));
      Rational a = rng.next_rational(), b = rng.next_rational();
      LambdaPoint lhs = lambda_mul(pair, lambda_exp(pair, v.scaled_rat(a)),
                                   lambda_exp(pair, v.scaled_rat(b)));
      LambdaPoint rhs = lambda_exp(pair, v.scaled_rat(a + b));
      CHECK(point_equal(lhs, rhs));
    }
  }
}

TEST_CASE("functoriality of the Lambda point assignment") {
  Rng rng(777);
  HCPair pair = make_clifford_pair();
  for (int s = 0; s < 40; ++s) {
    LambdaPoint p = random_point(pair, 4, rng);
    LambdaPoint q = random_point(pair, 4, rng);

    // sigma . rho with rho: L4 -> L3 and sigma: L3 -> L2.
    GrMorphism rho = gr_eps_mn(4, 3);
    GrMorphism sigma = gr_eps_mn(3, 2);
    GrMorphism both = gr_compose(sigma, rho);
    CHECK(point_equal(lambda_functor(pair, both, p),
                      lambda_functor(pair, sigma, lambda_functor(pair, rho, p))));

    // Homomorphism property.
    CHECK(point_equal(lambda_functor(pair, rho, lambda_mul(pair, p, q)),
                      lambda_mul(pair, lambda_functor(pair, rho, p),
                                 lambda_functor(pair, rho, q))));

    // Body projection is the epsilon functor.
    LambdaPoint body = lambda_functor(pair, gr_eps_mn(4, 4 - 4), p);
    CHECK(body.soul.soul().is_zero());
    CHECK(body.g == p.g);
  }
}

TEST_CASE("naturality of exp under Grassmann morphisms") {
  Rng rng(888);
  for (const HCPair& pair : {make_clifford_pair(), make_abelian_pair(2, 2)}) {
    for (int s = 0; s < 20; ++s) {
      SuperTensor v = random_soul(pair, 3, rng);
      for (std::size_t i = 0; i < pair.spec.even_dim(); ++i)
        v.add_term(i, 0, Scalar(rng.next_rational()));
      GrMorphism rho = gr_scaling(3, Scalar(rng.next_rational()));
      if (rng.next_int(0, 1) == 0) rho = gr_eps_mn(3, 2);
      LambdaPoint lhs = lambda_functor(pair, rho, lambda_exp(pair, v));
      LambdaPoint rhs = lambda_exp(pair, transport_tensor(pair.spec, rho, v));
      CHECK(point_equal(lhs, rhs));
    }
  }
}

TEST_CASE("bullet additivity on the top Grassmann layer") {
  for (const HCPair& pair : {make_clifford_pair(), make_scaling_pair(),
                             make_abelian_pair(1, 1)}) {
    HCReport rep = check_bullet_additivity(pair, 3, 50, 4321);
    for (const auto& d : rep.defects) CAPTURE(d);
    CHECK(rep.ok);
  }
}

TEST_CASE("bullet additivity fails off the top layer") {
  // x lambda1 and x lambda2 multiply with a -1/2 z lambda1 lambda2 tail, so
  // the product is not the plain sum.
  HCPair pair = make_clifford_pair();
  SuperTensor s1(pair.spec, 2, Scalar(0)), s2(pair.spec, 2, Scalar(0));
  s1.add_term(1, 0b01, Scalar(1));
  s2.add_term(1, 0b10, Scalar(1));
  GroupElement e = pair.group->identity();
  LambdaPoint prod = lambda_mul(pair, LambdaPoint{e, s1}, LambdaPoint{e, s2});
  CHECK(prod.soul != s1 + s2);
}

TEST_CASE("Ad transport commutes with even Grassmann scaling") {
  // Ad extended to tensors acts on the basis leg only, so it commutes with
  // any morphism acting on the Grassmann leg.
  HCPair pair = make_scaling_pair();
  Rng rng(515);
  for (int s = 0; s < 20; ++s) {
    GroupElement g = pair.group->random_element(rng);
    SuperTensor n = random_soul(pair, 3, rng);
    GrMorphism rho = gr_scaling(3, Scalar(rng.next_rational()));
    SuperTensor lhs = ad_tensor(pair, g, transport_tensor(pair.spec, rho, n));
    SuperTensor rhs = transport_tensor(pair.spec, rho, ad_tensor(pair, g, n));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("soul validation rejects bodies and odd terms") {
  HCPair pair = make_clifford_pair();
  SuperTensor body(pair.spec, 2, Scalar(0));
  body.add_term(0, 0, Scalar(1));
  CHECK_THROWS_AS(validate_soul(body), error);

  SuperTensor odd(pair.spec, 2, Scalar(0));
  odd.add_term(1, 0, Scalar(1));
  CHECK_THROWS_AS(validate_soul(odd), error);

  SuperTensor fine(pair.spec, 2, Scalar(0));
  fine.add_term(1, 0b01, Scalar(1));
  CHECK_NOTHROW(validate_soul(fine));
}
