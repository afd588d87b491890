#include "super/superalgebra.hpp"

#include <algorithm>

#include "super/poly.hpp"

namespace sup {

std::size_t LieSuperalgebraSpec::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (name_of(i) == name) return i;
  throw error("unknown basis element '" + name + "'");
}

RatVec LieSuperalgebraSpec::basis_vec(std::size_t i) const {
  RatVec v = zero_vec();
  v[i] = 1;
  return v;
}

RatVec LieSuperalgebraSpec::bracket_vec(const RatVec& a, const RatVec& b) const {
  RatVec out = zero_vec();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      const RatVec& sc = brackets[i][j];
      Rational f = a[i] * b[j];
      for (std::size_t t = 0; t < dim(); ++t)
        if (sc[t] != 0) out[t] += f * sc[t];
    }
  }
  return out;
}

void LieSuperalgebraSpec::validate_structure() const {
  const std::size_t d = dim();
  if (brackets.size() != d) throw schema_error("bracket table has wrong shape");
  for (const auto& row : brackets) {
    if (row.size() != d) throw schema_error("bracket table has wrong shape");
    for (const auto& v : row)
      if (v.size() != d) throw schema_error("bracket vector has wrong length");
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t seen = 0;
    for (std::size_t j = 0; j < d; ++j)
      if (name_of(i) == name_of(j)) ++seen;
    if (seen != 1) throw schema_error("duplicate basis name '" + name_of(i) + "'");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      int pi = basis_parity(i) == Parity::Odd ? 1 : 0;
      int pj = basis_parity(j) == Parity::Odd ? 1 : 0;
      Rational sign = (pi & pj) != 0 ? Rational(1) : Rational(-1);
      for (std::size_t t = 0; t < d; ++t) {
        if (brackets[i][j][t] != sign * brackets[j][i][t])
          throw schema_error("bracket table violates super antisymmetry at (" + name_of(i) +
                             "," + name_of(j) + ")");
        int pt = basis_parity(t) == Parity::Odd ? 1 : 0;
        if (brackets[i][j][t] != 0 && pt != (pi + pj) % 2)
          throw schema_error("bracket table violates the grading at (" + name_of(i) + "," +
                             name_of(j) + ")");
      }
    }
}

JacobiReport check_super_jacobi(const LieSuperalgebraSpec& spec) {
  JacobiReport report;
  const std::size_t d = spec.dim();
  auto pbit = [&](std::size_t i) { return spec.basis_parity(i) == Parity::Odd ? 1 : 0; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        RatVec sum = spec.zero_vec();
        auto accumulate = [&](std::size_t x, std::size_t y, std::size_t z, int sign_exp) {
          RatVec inner = spec.brackets[y][z];
          RatVec outer = spec.bracket_vec(spec.basis_vec(x), inner);
          Rational s = (sign_exp % 2) ? Rational(-1) : Rational(1);
          for (std::size_t t = 0; t < d; ++t) sum[t] += s * outer[t];
        };
        accumulate(i, j, k, pbit(i) * pbit(k));
        accumulate(j, k, i, pbit(j) * pbit(i));
        accumulate(k, i, j, pbit(k) * pbit(j));
        bool zero = std::all_of(sum.begin(), sum.end(), [](const Rational& r) { return r == 0; });
        if (!zero) {
          report.ok = false;
          report.violations.push_back({i, j, k, sum});
        }
      }
  return report;
}

Rational dynkin_word_coefficient(const std::vector<int>& word) {
  const int m = static_cast<int>(word.size());
  if (m == 0) return Rational(0);
  // f[e][n]: sum over splittings of word[0..e) into n blocks of shape
  // X^r Y^s, weighted by prod 1/(r! s!).
  std::vector<std::vector<Rational>> f(static_cast<std::size_t>(m + 1),
                                       std::vector<Rational>(static_cast<std::size_t>(m + 1),
                                                             Rational(0)));
  f[0][0] = 1;
  for (int e = 1; e <= m; ++e)
    for (int s = 0; s < e; ++s) {
      int zeros = 0, ones = 0;
      bool ok = true, seen_one = false;
      for (int t = s; t < e; ++t) {
        if (word[static_cast<std::size_t>(t)] == 0) {
          if (seen_one) {
            ok = false;
            break;
          }
          ++zeros;
        } else {
          seen_one = true;
          ++ones;
        }
      }
      if (!ok) continue;
      Rational w = Rational(1) / (factorial(static_cast<std::uint32_t>(zeros)) *
                                  factorial(static_cast<std::uint32_t>(ones)));
      for (int n = 1; n <= m; ++n) {
        const Rational& prev = f[static_cast<std::size_t>(s)][static_cast<std::size_t>(n - 1)];
        if (prev != 0) f[static_cast<std::size_t>(e)][static_cast<std::size_t>(n)] += prev * w;
      }
    }
  Rational total(0);
  for (int n = 1; n <= m; ++n) {
    const Rational& v = f[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    if (v == 0) continue;
    total += ((n % 2 == 1) ? Rational(1) : Rational(-1)) * v / Rational(n);
  }
  return total / Rational(m);
}

LieSuperalgebraSpec reconstruct_bracket(const std::vector<std::string>& even_basis,
                                        const std::vector<std::string>& odd_basis,
                                        const std::vector<std::vector<RatVec>>& c0,
                                        const std::vector<std::vector<RatVec>>& c1,
                                        const std::vector<std::vector<RatVec>>& c2) {
  const std::size_t p = even_basis.size();
  const std::size_t q = odd_basis.size();
  auto shape = [](const std::vector<std::vector<RatVec>>& t, std::size_t r, std::size_t c,
                  std::size_t len, const char* what) {
    if (t.size() != r) throw schema_error(std::string(what) + " table has wrong shape");
    for (const auto& row : t) {
      if (row.size() != c) throw schema_error(std::string(what) + " table has wrong shape");
      for (const auto& v : row)
        if (v.size() != len) throw schema_error(std::string(what) + " vector length wrong");
    }
  };
  shape(c0, p, p, p, "c0");
  shape(c1, p, q, q, "c1");
  shape(c2, q, q, p, "c2");
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < p; ++t)
        if (c0[i][j][t] != -c0[j][i][t]) throw error("c0 is not antisymmetric");
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t t = 0; t < p; ++t)
        if (c2[i][j][t] != c2[j][i][t]) throw error("c2 is not symmetric");

  LieSuperalgebraSpec spec;
  spec.even_basis = even_basis;
  spec.odd_basis = odd_basis;
  const std::size_t d = p + q;
  spec.brackets.assign(d, std::vector<RatVec>(d, RatVec(d, Rational(0))));
  auto embed_even = [&](const RatVec& v) {
    RatVec out(d, Rational(0));
    for (std::size_t t = 0; t < p; ++t) out[t] = v[t];
    return out;
  };
  auto embed_odd = [&](const RatVec& v, const Rational& s) {
    RatVec out(d, Rational(0));
    for (std::size_t t = 0; t < q; ++t) out[p + t] = s * v[t];
    return out;
  };
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) spec.brackets[i][j] = embed_even(c0[i][j]);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      spec.brackets[i][p + j] = embed_odd(c1[i][j], Rational(1));
      spec.brackets[p + j][i] = embed_odd(c1[i][j], Rational(-1));
    }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      RatVec v = embed_even(c2[i][j]);
      for (auto& x : v) x = -x;
      spec.brackets[p + i][p + j] = v;
    }
  spec.validate_structure();
  return spec;
}

C1C2Tables extract_c1_c2(const LieSuperalgebraSpec& spec, const BracketOracle& oracle) {
  const std::size_t p = spec.even_dim();
  const std::size_t q = spec.odd_dim();
  C1C2Tables tables;
  tables.c1.assign(p, std::vector<RatVec>(q, RatVec(q, Rational(0))));
  tables.c2.assign(q, std::vector<RatVec>(q, RatVec(p, Rational(0))));

  auto rational_of = [](const Scalar& s) {
    if (!s.is_exact() || s.exact_im() != 0)
      throw error("bracket oracle produced a non-rational coefficient");
    return s.exact_re();
  };

  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      SuperTensor a(spec, 1, Scalar(0));
      a.add_term(i, 0, Scalar(1));
      SuperTensor b(spec, 1, Scalar(0));
      b.add_term(p + j, 1, Scalar(1));
      SuperTensor r = oracle(a, b);
      for (const auto& [key, c] : r.terms()) {
        if (key.second != 1 || key.first < p)
          throw error("oracle output not of the required monomial shape for c1");
        tables.c1[i][j][key.first - p] = rational_of(c);
      }
    }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      SuperTensor a(spec, 2, Scalar(0));
      a.add_term(p + i, 1, Scalar(1));
      SuperTensor b(spec, 2, Scalar(0));
      b.add_term(p + j, 2, Scalar(1));
      SuperTensor r = oracle(a, b);
      for (const auto& [key, c] : r.terms()) {
        if (key.second != 3 || key.first >= p)
          throw error("oracle output not of the required monomial shape for c2");
        tables.c2[i][j][key.first] = rational_of(c);
      }
    }
  return tables;
}

namespace {

// Reduced row echelon basis of the rational row span; empty if zero.
std::vector<RatVec> rat_row_basis(std::vector<RatVec> rows) {
  std::vector<RatVec> basis;
  for (auto& r : rows) {
    for (const auto& b : basis) {
      std::size_t lead = 0;
      while (lead < b.size() && b[lead] == 0) ++lead;
      if (lead < b.size() && r[lead] != 0) {
        Rational f = r[lead] / b[lead];
        for (std::size_t t = 0; t < r.size(); ++t) r[t] -= f * b[t];
      }
    }
    if (std::any_of(r.begin(), r.end(), [](const Rational& x) { return x != 0; })) {
      basis.push_back(r);
      std::sort(basis.begin(), basis.end(), [](const RatVec& x, const RatVec& y) {
        std::size_t lx = 0, ly = 0;
        while (lx < x.size() && x[lx] == 0) ++lx;
        while (ly < y.size() && y[ly] == 0) ++ly;
        return lx < ly;
      });
    }
  }
  return basis;
}

}  // namespace

std::optional<int> nilpotency_class(const LieSuperalgebraSpec& spec, int bound) {
  const std::size_t d = spec.dim();
  std::vector<RatVec> current;
  for (std::size_t i = 0; i < d; ++i) current.push_back(spec.basis_vec(i));
  for (int c = 1; c <= bound; ++c) {
    std::vector<RatVec> next_rows;
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& v : current) next_rows.push_back(spec.bracket_vec(spec.basis_vec(i), v));
    std::vector<RatVec> next = rat_row_basis(std::move(next_rows));
    if (next.empty()) return c;
    current = std::move(next);
  }
  return std::nullopt;
}

namespace {

LieSuperalgebraSpec blank_spec(std::vector<std::string> even, std::vector<std::string> odd) {
  LieSuperalgebraSpec spec;
  spec.even_basis = std::move(even);
  spec.odd_basis = std::move(odd);
  const std::size_t d = spec.dim();
  spec.brackets.assign(d, std::vector<RatVec>(d, RatVec(d, Rational(0))));
  return spec;
}

}  // namespace

LieSuperalgebraSpec make_abelian(std::size_t p, std::size_t q) {
  std::vector<std::string> even, odd;
  for (std::size_t i = 1; i <= p; ++i) even.push_back("e" + std::to_string(i));
  for (std::size_t i = 1; i <= q; ++i) odd.push_back("x" + std::to_string(i));
  return blank_spec(std::move(even), std::move(odd));
}

LieSuperalgebraSpec make_clifford1() {
  LieSuperalgebraSpec spec = blank_spec({"z"}, {"x"});
  spec.brackets[1][1][0] = 1;  // [x,x] = z
  return spec;
}

LieSuperalgebraSpec make_scaling11() {
  LieSuperalgebraSpec spec = blank_spec({"a"}, {"x"});
  spec.brackets[0][1][1] = 1;   // [a,x] = x
  spec.brackets[1][0][1] = -1;  // [x,a] = -x
  return spec;
}

LieSuperalgebraSpec make_sl2() {
  LieSuperalgebraSpec spec = blank_spec({"e", "f", "h"}, {});
  auto set = [&](std::size_t i, std::size_t j, std::size_t t, long v) {
    spec.brackets[i][j][t] = Rational(v);
    spec.brackets[j][i][t] = Rational(-v);
  };
  set(0, 1, 2, 1);   // [e,f] = h
  set(2, 0, 0, 2);   // [h,e] = 2e
  set(2, 1, 1, -2);  // [h,f] = -2f
  return spec;
}

LieSuperalgebraSpec make_heisenberg3() {
  LieSuperalgebraSpec spec = blank_spec({"p", "q", "z"}, {});
  spec.brackets[0][1][2] = 1;   // [p,q] = z
  spec.brackets[1][0][2] = -1;  // [q,p] = -z
  return spec;
}

std::string tensor_to_string(const SuperTensor& a, const LieSuperalgebraSpec& spec) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : a.terms()) {
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos)
      cs = "(" + cs + ")";
    std::string term = (cs == "1" ? "" : cs + "*") + spec.name_of(key.first);
    for (int i : mask_to_tuple(key.second)) term += "*l" + std::to_string(i);
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace sup
