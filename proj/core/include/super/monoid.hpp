#pragma once

#include "super/hcpair.hpp"
#include "super/uea.hpp"

namespace sup {

// Element of the *-monoid S = G x U(g_C).
struct SElement {
  GroupElement g;
  UEAElement d;
};

SElement monoid_identity(const HCPair& pair);

// (g1, D1)(g2, D2) = (g1 g2, (Ad(g2^-1) D1) D2).
SElement monoid_mul(const HCPair& pair, const SElement& a, const SElement& b);

// (g, D)* = (g^-1, Ad(g) D*).
SElement monoid_star(const HCPair& pair, const SElement& a);

bool monoid_equal(const SElement& a, const SElement& b);

}  // namespace sup
