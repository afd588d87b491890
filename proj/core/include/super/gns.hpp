#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "super/matrix.hpp"
#include "super/monoid.hpp"
#include "super/rng.hpp"

namespace sup {

// Finite-dimensional graded representation: rho matrices per basis generator
// of g, a group evaluator pi, grading = first dim_even coordinates even.
struct FiniteDimRep {
  std::size_t dim_even = 0;
  std::size_t dim_odd = 0;
  std::vector<ScalarMat> rho;
  std::function<ScalarMat(const GroupElement&)> pi;

  std::size_t dim() const { return dim_even + dim_odd; }
};

// Structural checks: shapes, parity blocks, bracket realization, and the
// odd-generator symmetry rho(x)^dagger = -i rho(x) (the exact form of
// "e^{-i pi/4} rho(x) is symmetric").
HCReport check_rep(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep, double tol,
                   const std::vector<GroupElement>& group_samples = {});

// rho extended to U(g_C) on PBW normal forms.
ScalarMat rho_of_uea(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep,
                     const UEAElement& d);

// phi_{v,w}(g, D) = <pi(g) rho(D) v, w>, inner product linear in the first
// argument. Kinds are promoted to float when any ingredient is float.
Scalar matrix_coefficient(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep,
                          const std::vector<Scalar>& v, const std::vector<Scalar>& w,
                          const SElement& s);

struct PDFunction {
  std::function<Scalar(const SElement&)> eval;
  bool exact = false;  // exact scalars throughout; enables the exact path
};

PDFunction pdfunction_from_rep(const LieSuperalgebraSpec& spec, const FiniteDimRep& rep,
                               const std::vector<Scalar>& v, const std::vector<Scalar>& w);

struct PDReport {
  bool ok = true;
  bool even_ok = true;
  bool psd = true;
  std::vector<std::string> defects;
  ScalarMat gram;
  LDLResult ldl;
};

// Gram over the samples, PSD certificate, evenness on odd samples.
PDReport check_positive_definite(const HCPair& pair, const PDFunction& phi,
                                 const std::vector<SElement>& samples, double tol);

// Coefficient-space quotient of a Hermitian PSD Gram matrix: vectors are
// coefficient columns u with <u, w> = w^dagger G u; quotient coordinates are
// the first r entries of L^* applied in permuted order.
struct GramQuotient {
  ScalarMat gram;
  LDLResult ldl;
  std::size_t rank = 0;
  std::vector<std::vector<Scalar>> qcols;  // rank columns, original coordinates
  std::vector<Scalar> metric;              // positive pivots d_0..d_{r-1}
  std::vector<int> parity;                 // parity of each quotient direction
};

GramQuotient gram_quotient(const ScalarMat& gram, const std::vector<int>& gen_parity,
                           double tol);

std::vector<Scalar> quotient_coords(const GramQuotient& q, const std::vector<Scalar>& u);

// <y, y'> with the diagonal metric.
Scalar metric_inner(const GramQuotient& q, const std::vector<Scalar>& y,
                    const std::vector<Scalar>& yp);

struct GNSModel {
  std::vector<SElement> generators;
  GramQuotient quotient;
  std::vector<SElement> op_elements;   // declared acting generators, *-closed
  std::vector<ScalarMat> op_matrices;  // rank x rank, left action on labels
  std::vector<std::size_t> star_partner;
  std::vector<Scalar> v0;  // class of the identity generator
  double tolerance = 0.0;
};

// GNS construction from the positive definite function: LDL quotient,
// operators via exact Gram span-solve with a leakage residual check, cyclic
// vector = class of (1_G, 1).
GNSModel gns_build(const HCPair& pair, const PDFunction& phi,
                   const std::vector<SElement>& generators,
                   const std::vector<SElement>& acting, double tol);

struct GNSVerifyReport {
  bool ok = true;
  double reconstruction = 0.0;
  double star = 0.0;
  double unitarity = 0.0;
  bool v0_even = true;
  std::vector<std::string> defects;
};

GNSVerifyReport gns_verify(const HCPair& pair, const GNSModel& model, const PDFunction& phi,
                           int trials, std::uint64_t seed);

struct IntertwinerResult {
  bool ok = true;
  ScalarMat t;
  double residual = 0.0;
  std::vector<std::string> defects;
};

// Canonical unitary identification of two models of the same phi over the
// same generator multiset (any order, any pivots).
IntertwinerResult gns_intertwiner(const HCPair& pair, const GNSModel& m1, const GNSModel& m2,
                                  double tol);

// Entry-wise promotion to the float kind, for comparing an exact model with
// a float one.
GNSModel gns_model_to_float(const GNSModel& m);

}  // namespace sup
