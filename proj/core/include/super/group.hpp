#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "super/matrix.hpp"
#include "super/rng.hpp"
#include "super/superalgebra.hpp"

namespace sup {

// Coordinates of a group element; the meaning is model-dependent
// (exp coordinates over the even basis, or positive torus factors).
struct GroupElement {
  std::vector<Rational> coords;
  bool operator==(const GroupElement& o) const { return coords == o.coords; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

// Exact group backing a Harish-Chandra pair: multiplication, inversion, the
// adjoint action on g as an exact matrix, a capability-flagged exponential
// from g0, and one-parameter adjoint jets t -> Ad(e^{t b_i}).
class GroupModel {
 public:
  virtual ~GroupModel() = default;
  virtual std::string name() const = 0;
  virtual std::size_t coord_dim() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement invert(const GroupElement& a) const = 0;
  virtual ScalarMat ad(const GroupElement& a) const = 0;
  virtual bool has_exp() const = 0;
  virtual GroupElement exp(const RatVec& v0) const = 0;
  // Matrix of Ad(e^{t b_i}) over polynomials in "t", truncated at order.
  virtual PolyMat ad_exp_jet(std::size_t basis_index, std::uint32_t order) const = 0;
  virtual bool element_valid(const GroupElement& a) const = 0;
  virtual GroupElement random_element(Rng& rng) const = 0;

  void check_element(const GroupElement& a) const {
    if (!element_valid(a)) throw error("group element outside the model's domain");
  }
};

// Nilpotent simply connected group in exponential coordinates over the even
// basis: product = bch, Ad(exp v) = exp(ad_v) exactly.
class NilpotentExp final : public GroupModel {
 public:
  explicit NilpotentExp(const LieSuperalgebraSpec& spec);

  std::string name() const override { return "nilpotent_exp"; }
  std::size_t coord_dim() const override { return spec_.even_dim(); }
  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement invert(const GroupElement& a) const override;
  ScalarMat ad(const GroupElement& a) const override;
  bool has_exp() const override { return true; }
  GroupElement exp(const RatVec& v0) const override;
  PolyMat ad_exp_jet(std::size_t basis_index, std::uint32_t order) const override;
  bool element_valid(const GroupElement& a) const override;
  GroupElement random_element(Rng& rng) const override;

  // ad matrix of an even coordinate vector on all of g, as exact rationals.
  ScalarMat ad_matrix(const RatVec& even_coords) const;

 private:
  LieSuperalgebraSpec spec_;
};

// Split torus of positive rationals acting diagonally on the basis with
// integer weights; one factor per even basis element. exp is unavailable
// exactly; adjoint one-parameter jets are exact truncated series.
class ScalingTorus final : public GroupModel {
 public:
  // weights[f][i]: weight of basis element i under torus factor f.
  ScalingTorus(const LieSuperalgebraSpec& spec, std::vector<std::vector<long>> weights);

  std::string name() const override { return "scaling_torus"; }
  std::size_t coord_dim() const override { return factors_; }
  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement invert(const GroupElement& a) const override;
  ScalarMat ad(const GroupElement& a) const override;
  bool has_exp() const override { return false; }
  GroupElement exp(const RatVec& v0) const override;
  PolyMat ad_exp_jet(std::size_t basis_index, std::uint32_t order) const override;
  bool element_valid(const GroupElement& a) const override;
  GroupElement random_element(Rng& rng) const override;

  const std::vector<std::vector<long>>& weights() const { return weights_; }

 private:
  std::size_t factors_;
  std::size_t dim_;
  std::vector<std::vector<long>> weights_;
};

// Exact rational image of an exact matrix applied to a rational vector.
RatVec apply_exact(const ScalarMat& m, const RatVec& v);

}  // namespace sup
