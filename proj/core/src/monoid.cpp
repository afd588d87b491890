#include "super/monoid.hpp"

namespace sup {

SElement monoid_identity(const HCPair& pair) {
  return {pair.group->identity(), UEAElement::unit(pair.spec)};
}

SElement monoid_mul(const HCPair& pair, const SElement& a, const SElement& b) {
  GroupElement g = pair.group->multiply(a.g, b.g);
  ScalarMat ad = pair.group->ad(pair.group->invert(b.g));
  UEAElement moved = ad_apply_uea(pair.spec, ad, a.d);
  return {g, uea_mul(pair.spec, moved, b.d)};
}

SElement monoid_star(const HCPair& pair, const SElement& a) {
  GroupElement ginv = pair.group->invert(a.g);
  ScalarMat ad = pair.group->ad(a.g);
  return {ginv, ad_apply_uea(pair.spec, ad, uea_star(pair.spec, a.d))};
}

bool monoid_equal(const SElement& a, const SElement& b) {
  return a.g == b.g && a.d == b.d;
}

}  // namespace sup
