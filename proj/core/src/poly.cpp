#include "super/poly.hpp"

#include <algorithm>
#include <cctype>

#include "super/error.hpp"

namespace sup {

MultiPoly MultiPoly::constant(const Scalar& c, std::vector<std::string> vars) {
  MultiPoly p(std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::var(const std::string& name, std::vector<std::string> vars) {
  MultiPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

std::size_t MultiPoly::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw error("unknown polynomial variable '" + name + "'");
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Scalar MultiPoly::constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t t = 0;
    for (std::uint32_t x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

Scalar MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != vars_.size()) throw error("exponent vector length mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_vars(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw error("polynomial variable lists differ");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_vars(o);
  MultiPoly r(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.add_term(e, t * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(const std::string& name) const {
  std::size_t k = var_index(name);
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponents d = e;
    d[k] -= 1;
    r.add_term(d, Scalar(Rational(static_cast<long>(e[k]))) * c);
  }
  return r;
}

MultiPoly MultiPoly::truncated(std::uint32_t max_total_degree) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    std::uint32_t t = 0;
    for (std::uint32_t x : e) t += x;
    if (t <= max_total_degree) r.terms_.emplace(e, c);
  }
  return r;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly acc = constant(Scalar(1), vars_);
  for (std::uint32_t k = 0; k < e; ++k) acc = acc * *this;
  return acc;
}

Scalar MultiPoly::eval(const std::map<std::string, Scalar>& point) const {
  std::vector<Scalar> vals;
  vals.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = point.find(v);
    if (it == point.end()) throw error("evaluation point misses variable '" + v + "'");
    vals.push_back(it->second);
  }
  Scalar sum(0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t *= vals[i].pow(e[i]);
    if (first && t.is_float()) sum = Scalar::flt(0.0, 0.0);
    first = false;
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size()) throw error("compose: wrong number of images");
  std::vector<std::string> tv = images.empty() ? vars_ : images[0].vars();
  for (const auto& im : images)
    if (im.vars() != tv) throw error("compose: images over different variable lists");
  MultiPoly r(tv);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(c, tv);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * images[i].pow(e[i]);
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::extract(const std::map<std::string, std::uint32_t>& fixed) const {
  std::vector<std::size_t> fixed_idx;
  std::vector<std::uint32_t> fixed_exp;
  std::vector<std::string> rest;
  std::vector<std::size_t> rest_idx;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = fixed.find(vars_[i]);
    if (it != fixed.end()) {
      fixed_idx.push_back(i);
      fixed_exp.push_back(it->second);
    } else {
      rest.push_back(vars_[i]);
      rest_idx.push_back(i);
    }
  }
  if (fixed_idx.size() != fixed.size()) throw error("extract: unknown variable");
  MultiPoly r(rest);
  for (const auto& [e, c] : terms_) {
    bool match = true;
    for (std::size_t k = 0; k < fixed_idx.size(); ++k)
      if (e[fixed_idx[k]] != fixed_exp[k]) {
        match = false;
        break;
      }
    if (!match) continue;
    Exponents re(rest.size());
    for (std::size_t k = 0; k < rest_idx.size(); ++k) re[k] = e[rest_idx[k]];
    r.add_term(re, c);
  }
  return r;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& new_vars) const {
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it == new_vars.end()) throw error("with_vars: '" + vars_[i] + "' missing from target");
    pos[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  MultiPoly r(new_vars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    r.add_term(ne, c);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    bool monic = std::any_of(e.begin(), e.end(), [](std::uint32_t x) { return x != 0; });
    Scalar coef = c;
    std::string sep = " + ";
    if (coef.is_exact() && coef.exact_im() == 0 && coef.exact_re() < 0) {
      sep = " - ";
      coef = -coef;
    }
    std::string cs = coef.to_string();
    if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos)
      cs = "(" + cs + ")";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (!monic)
      term = cs;
    else if (cs == "1")
      term = mono;
    else
      term = cs + "*" + mono;
    if (out.empty())
      out = (sep == " - " ? "-" : "") + term;
    else
      out += sep + term;
  }
  return out;
}

namespace {

struct PolyParser {
  const std::string& s;
  std::size_t pos = 0;
  const std::vector<std::string>& vars;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool has_var(const std::string& name) const {
    return std::find(vars.begin(), vars.end(), name) != vars.end();
  }

  MultiPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    MultiPoly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc += parse_term();
      } else if (c == '-') {
        ++pos;
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_power();
    while (peek() == '*') {
      ++pos;
      acc = acc * parse_power();
    }
    return acc;
  }

  MultiPoly parse_power() {
    MultiPoly base = parse_primary();
    if (peek() == '^') {
      ++pos;
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw schema_error("missing exponent in polynomial");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(s.substr(start, pos - start))));
    }
    return base;
  }

  MultiPoly parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos;
      MultiPoly inner = parse_expr();
      if (!eat(')')) throw schema_error("unbalanced parenthesis in polynomial");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      }
      Rational r = rational_from_string(s.substr(start, pos - start));
      // Trailing 'i' (with no identifier continuation) marks an imaginary
      // rational, unless "i" is itself a variable here.
      if (pos < s.size() && s[pos] == 'i' && !has_var("i") &&
          (pos + 1 >= s.size() || (!std::isalnum(static_cast<unsigned char>(s[pos + 1])) &&
                                   s[pos + 1] != '_'))) {
        ++pos;
        return MultiPoly::constant(Scalar(Rational(0), r), vars);
      }
      return MultiPoly::constant(Scalar(r), vars);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "i" && !has_var("i"))
        return MultiPoly::constant(Scalar::i(), vars);
      if (!has_var(name)) throw schema_error("unknown variable '" + name + "' in polynomial");
      return MultiPoly::var(name, vars);
    }
    throw schema_error("unexpected character in polynomial: '" + std::string(1, c) + "'");
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, std::vector<std::string> vars) {
  PolyParser p{text, 0, vars};
  p.skip_ws();
  if (p.pos >= text.size()) return MultiPoly(std::move(vars));
  MultiPoly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw schema_error("trailing characters in polynomial: '" + text.substr(p.pos) + "'");
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  if (order != o.order) throw error("jet order mismatch");
  return Jet(p * o.p, order);
}

Jet Jet::operator+(const Jet& o) const {
  if (order != o.order) throw error("jet order mismatch");
  return Jet(p + o.p, order);
}

Jet Jet::operator-(const Jet& o) const {
  if (order != o.order) throw error("jet order mismatch");
  return Jet(p - o.p, order);
}

Jet Jet::exp() const {
  if (!p.constant_term().is_zero()) throw error("jet exp needs zero constant term");
  MultiPoly acc = MultiPoly::constant(Scalar(1), p.vars());
  MultiPoly power = MultiPoly::constant(Scalar(1), p.vars());
  for (std::uint32_t k = 1; k <= order; ++k) {
    power = (power * p).truncated(order);
    acc += power.scaled(Scalar(Rational(1) / factorial(k)));
  }
  return Jet(acc, order);
}

Jet Jet::inverse() const {
  Scalar c0 = p.constant_term();
  if (c0.is_zero()) throw error("jet inverse needs invertible constant term");
  // p = c0 (1 + q), 1/p = (1/c0) sum (-q)^k.
  MultiPoly q = (p - MultiPoly::constant(c0, p.vars())).scaled(c0.inv());
  MultiPoly acc = MultiPoly::constant(Scalar(1), p.vars());
  MultiPoly power = MultiPoly::constant(Scalar(1), p.vars());
  for (std::uint32_t k = 1; k <= order; ++k) {
    power = (power * (-q)).truncated(order);
    acc += power;
  }
  return Jet(acc.scaled(c0.inv()), order);
}

std::vector<std::vector<std::vector<int>>> partitions(int n) {
  if (n < 0) throw guard_error("partitions of negative n");
  if (n > 12) throw guard_error("partitions guarded at n <= 12");
  std::vector<std::vector<std::vector<int>>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  // Restricted growth strings a with a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  auto emit = [&]() {
    int blocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> part(static_cast<std::size_t>(blocks));
    for (int i = 0; i < n; ++i) part[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i + 1);
    out.push_back(std::move(part));
  };
  // Iterative odometer over restricted growth strings.
  while (true) {
    emit();
    int i = n - 1;
    while (i > 0) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[static_cast<std::size_t>(j)]);
      if (a[static_cast<std::size_t>(i)] < mx + 1) break;
      a[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i == 0) break;
    a[static_cast<std::size_t>(i)] += 1;
  }
  return out;
}

Rational factorial(std::uint32_t n) {
  Rational r(1);
  for (std::uint32_t k = 2; k <= n; ++k) r *= Rational(static_cast<long>(k));
  return r;
}

namespace {

// Enumerates exponent vectors over m variables with total degree <= order.
void enum_exponents(std::size_t m, std::uint32_t order, std::vector<std::uint32_t>& cur,
                    std::size_t i, std::uint32_t used,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (i == m) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e + used <= order; ++e) {
    cur[i] = e;
    enum_exponents(m, order, cur, i + 1, used + e, out);
  }
  cur[i] = 0;
}

}  // namespace

Jet jet_compose(const Jet& outer, const std::vector<Jet>& inner, std::uint32_t order) {
  const std::size_t k = outer.p.vars().size();
  if (inner.size() != k) throw error("jet_compose: inner count must match outer arity");
  if (order > outer.order) throw guard_error("jet_compose: order above outer truncation");
  std::vector<std::string> tvars =
      inner.empty() ? std::vector<std::string>{} : inner[0].p.vars();
  for (const auto& j : inner) {
    if (order > j.order) throw guard_error("jet_compose: order above inner truncation");
    if (j.p.vars() != tvars) throw error("jet_compose: inner jets over different variables");
    if (!j.p.constant_term().is_zero())
      throw guard_error("jet_compose: inner jet has nonzero constant term");
  }
  const std::size_t m = tvars.size();

  MultiPoly result(tvars);
  std::vector<std::vector<std::uint32_t>> betas;
  std::vector<std::uint32_t> cur(m, 0);
  enum_exponents(m, order, cur, 0, 0, betas);

  for (const auto& beta : betas) {
    // Slot list of the monomial t^beta: variable index repeated beta-many times.
    std::vector<std::size_t> slots;
    for (std::size_t v = 0; v < m; ++v)
      for (std::uint32_t r = 0; r < beta[v]; ++r) slots.push_back(v);
    const int n = static_cast<int>(slots.size());

    Scalar c(0);
    bool c_float = false;
    for (const auto& part : partitions(n)) {
      const std::size_t nb = part.size();
      // Per block: exponent vector of the slots it covers, with its coefficient
      // in each inner jet pre-scaled by the block factorial.
      std::vector<std::vector<Scalar>> block_factor(nb, std::vector<Scalar>(k, Scalar(0)));
      bool block_dead = false;
      for (std::size_t b = 0; b < nb && !block_dead; ++b) {
        std::vector<std::uint32_t> delta(m, 0);
        for (int slot : part[b]) delta[slots[static_cast<std::size_t>(slot - 1)]] += 1;
        Rational dfact(1);
        for (std::uint32_t d : delta) dfact *= factorial(d);
        bool any = false;
        for (std::size_t j = 0; j < k; ++j) {
          Scalar cj = inner[j].p.coeff(delta);
          block_factor[b][j] = cj.is_float() ? Scalar::flt(dfact.get_d()) * cj
                                             : Scalar(dfact) * cj;
          if (!block_factor[b][j].is_zero()) any = true;
        }
        if (!any) block_dead = true;
      }
      if (block_dead) continue;

      // Sum over assignments alpha: blocks -> outer variables.
      std::vector<std::size_t> alpha(nb, 0);
      while (true) {
        std::vector<std::uint32_t> gamma(k, 0);
        for (std::size_t b = 0; b < nb; ++b) gamma[alpha[b]] += 1;
        Scalar h = outer.p.coeff(gamma);
        if (!h.is_zero()) {
          Rational gfact(1);
          for (std::uint32_t g : gamma) gfact *= factorial(g);
          Scalar term = h.is_float() ? Scalar::flt(gfact.get_d()) * h : Scalar(gfact) * h;
          for (std::size_t b = 0; b < nb; ++b) term *= block_factor[b][alpha[b]];
          if (term.is_float() && !c_float) {
            c = c.is_zero() ? Scalar::flt(0.0) : c.to_float();
            c_float = true;
          }
          if (c_float && term.is_exact()) term = term.to_float();
          c += term;
        }
        // Odometer over alpha.
        std::size_t b = 0;
        while (b < nb) {
          if (++alpha[b] < k) break;
          alpha[b] = 0;
          ++b;
        }
        if (b == nb || nb == 0) break;
      }
    }
    Rational bfact(1);
    for (std::uint32_t b : beta) bfact *= factorial(b);
    Scalar cb = c.is_float() ? Scalar::flt(1.0 / bfact.get_d()) * c
                             : Scalar(Rational(1) / bfact) * c;
    result.add_term(beta, cb);
  }
  return Jet(result, order);
}

Jet jet_substitute(const Jet& outer, const std::vector<Jet>& inner, std::uint32_t order) {
  std::vector<MultiPoly> images;
  images.reserve(inner.size());
  for (const auto& j : inner) images.push_back(j.p);
  return Jet(outer.p.compose(images), order);
}

}  // namespace sup
