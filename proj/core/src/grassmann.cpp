#include "super/grassmann.hpp"

#include <algorithm>

namespace sup {

std::uint64_t tuple_to_mask(const std::vector<int>& tuple, int n) {
  std::uint64_t mask = 0;
  int prev = 0;
  for (int i : tuple) {
    if (i <= prev) throw schema_error("index tuple must be strictly increasing");
    if (i < 1 || i > n) throw schema_error("Grassmann index out of range");
    mask |= std::uint64_t(1) << (i - 1);
    prev = i;
  }
  return mask;
}

std::vector<int> mask_to_tuple(std::uint64_t mask) {
  std::vector<int> tuple;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) tuple.push_back(__builtin_ctzll(m) + 1);
  return tuple;
}

GrMorphism gr_eps(int n) {
  GrMorphism phi;
  phi.source_n = n;
  phi.target_n = 0;
  for (int i = 0; i < n; ++i) phi.images.emplace_back(0, Scalar(0));
  return phi;
}

GrMorphism gr_iota(int n) {
  GrMorphism phi;
  phi.source_n = 0;
  phi.target_n = n;
  return phi;
}

GrMorphism gr_eps_mn(int m, int n) {
  if (n > m) throw error("gr_eps_mn needs m >= n");
  GrMorphism phi;
  phi.source_n = m;
  phi.target_n = n;
  for (int i = 1; i <= m; ++i) {
    if (i <= n)
      phi.images.push_back(GrassmannElement::generator(n, i, Scalar(0)));
    else
      phi.images.emplace_back(n, Scalar(0));
  }
  return phi;
}

GrMorphism gr_iota_nm(int n, int m) {
  if (n > m) throw error("gr_iota_nm needs n <= m");
  GrMorphism phi;
  phi.source_n = n;
  phi.target_n = m;
  for (int i = 1; i <= n; ++i) phi.images.push_back(GrassmannElement::generator(m, i, Scalar(0)));
  return phi;
}

GrMorphism gr_scaling(int n, const Scalar& s) {
  GrMorphism phi;
  phi.source_n = n;
  phi.target_n = n;
  for (int i = 1; i <= n; ++i)
    phi.images.push_back(GrassmannElement::generator(n, i, Scalar(0)).scaled(s));
  return phi;
}

GrMorphism gr_permutation(int n, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != n) throw error("permutation length mismatch");
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int p : perm) {
    if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)]++)
      throw error("not a permutation of 1..n");
  }
  GrMorphism phi;
  phi.source_n = n;
  phi.target_n = n;
  for (int i = 0; i < n; ++i)
    phi.images.push_back(
        GrassmannElement::generator(n, perm[static_cast<std::size_t>(i)], Scalar(0)));
  return phi;
}

std::string gr_to_string(const GrassmannElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, c] : a.terms()) {
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos)
      cs = "(" + cs + ")";
    std::string mono;
    for (int i : mask_to_tuple(mask)) {
      if (!mono.empty()) mono += "*";
      mono += "l" + std::to_string(i);
    }
    std::string term;
    if (mono.empty())
      term = cs;
    else if (cs == "1")
      term = mono;
    else
      term = cs + "*" + mono;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace sup
