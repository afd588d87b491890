#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "super/gns.hpp"

namespace sup {

// Truncated moment functional: values on PBW monomials up to degree_cap.
// Absent odd monomials read as zero (evenness); absent even monomials are an
// incompleteness error when required.
struct MomentFunctional {
  std::uint32_t degree_cap = 6;
  std::map<PBWMonomial, Scalar> values;
};

Scalar moment_value(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                    const PBWMonomial& m);
Scalar moment_eval(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                   const UEAElement& d);

struct MomentReport {
  bool ok = true;
  bool even_ok = true;
  bool hermitian_ok = true;
  bool psd = true;
  std::uint32_t d = 0;
  std::vector<PBWMonomial> basis;
  ScalarMat gram;
  LDLResult ldl;
  std::vector<std::string> defects;
};

// Evenness scan, Hermitian-symmetry scan, Hankel-Gram PSD certificate over
// monomials of degree <= degree_cap / 2.
MomentReport moment_check(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                          double tol);

// Quotients of the degree blocks d, d-1, d-2 plus generator block maps; the
// matrices are maps between blocks, never square truncations.
struct TruncatedGNS {
  std::uint32_t d = 0;
  std::vector<PBWMonomial> basis_full, basis_mid, basis_low;
  GramQuotient full, mid, low;
  std::vector<ScalarMat> rho_mid_full;  // per generator: Q_{d-1} -> Q_d
  std::vector<ScalarMat> rho_low_mid;   // per generator: Q_{d-2} -> Q_{d-1}
  ScalarMat incl_mid_full;              // natural inclusion Q_{d-1} -> Q_d
  ScalarMat incl_low_mid;
  HCReport bracket_report;    // graded commutators on the low block
  HCReport symmetry_report;   // <rho(x)u, w> = i <u, rho(x)w> for odd x
  std::string verdict;        // "positive-at-degree-d"
};

TruncatedGNS moment_gns(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                        std::uint32_t d, double tol);

struct GrowthReport {
  std::vector<double> a;        // a_n = |lam(D1 x^n D2)| / n!
  std::vector<double> ratios;   // a_{n+1} / a_n where defined
  double partial_sum = 0.0;
  bool heuristic = true;        // never a convergence verdict
};

GrowthReport growth_diagnostic(const LieSuperalgebraSpec& spec, const MomentFunctional& lam,
                               const UEAElement& d1, const UEAElement& d2, std::size_t x_index,
                               std::uint32_t n_max);

// phi((g, D)) = chi(g) * lam(D); with no character the group part must be the
// identity. Exactness follows the table when no character is supplied.
PDFunction pdfunction_from_moment(const HCPair& pair, const MomentFunctional& lam,
                                  std::function<Scalar(const GroupElement&)> character = nullptr);

// lam(m) = phi((1_G, m)) for all monomials up to the cap.
MomentFunctional moment_from_pdfunction(const HCPair& pair, const PDFunction& phi,
                                        std::uint32_t degree_cap);

}  // namespace sup
