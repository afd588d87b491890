#pragma once

#include <memory>
#include <string>
#include <vector>

#include "super/group.hpp"
#include "super/superalgebra.hpp"

namespace sup {

struct HCPair {
  LieSuperalgebraSpec spec;
  std::shared_ptr<const GroupModel> group;
};

// Lambda point of the supergroup in semidirect coordinates (g, n) with n in
// (g (x) Lambda^+)_0: the pair stands for g * exp(n).
struct LambdaPoint {
  GroupElement g;
  SuperTensor soul;
};

void validate_soul(const SuperTensor& n);  // Lambda-even, no body

// Adjoint action of g on a super tensor (matrix on the basis leg).
SuperTensor ad_tensor(const HCPair& pair, const GroupElement& g, const SuperTensor& n);

LambdaPoint lambda_identity(const HCPair& pair, int lambda_n);
LambdaPoint lambda_mul(const HCPair& pair, const LambdaPoint& p, const LambdaPoint& q);
LambdaPoint lambda_inv(const HCPair& pair, const LambdaPoint& p);

// exp of a Lambda-even tensor with body in the group model's exp domain.
LambdaPoint lambda_exp(const HCPair& pair, const SuperTensor& v);

// Functorial transport of the soul along a Grassmann morphism.
LambdaPoint lambda_functor(const HCPair& pair, const GrMorphism& rho, const LambdaPoint& p);
SuperTensor transport_tensor(const LieSuperalgebraSpec& spec, const GrMorphism& rho,
                             const SuperTensor& n);

struct HCReport {
  bool ok = true;
  std::vector<std::string> defects;
};

// Sample-based validation of the Harish-Chandra pair axioms: group laws,
// Ad homomorphism and grading, bracket automorphism, and the one-parameter
// jet identity d/dt Ad(e^{t x}) y |_0 = [x, y].
HCReport validate_hcpair(const HCPair& pair, int samples, std::uint64_t seed);

// On souls supported in (g (x) Lambda_n * lambda_{n+1})_0 the product is the
// plain sum; lambda_n here is the total generator count n+1.
HCReport check_bullet_additivity(const HCPair& pair, int lambda_n, int samples,
                                 std::uint64_t seed);

// Shipped fixture pairs.
HCPair make_clifford_pair();   // clifford(1), G = (R,+) one even direction
HCPair make_scaling_pair();    // scaling(1|1), G = positive rationals
HCPair make_abelian_pair(std::size_t p, std::size_t q);
HCPair make_heisenberg_pair();

}  // namespace sup
