#include "super/uea.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sup {

std::uint32_t mono_degree(const PBWMonomial& m) {
  std::uint32_t d = 0;
  for (std::uint32_t e : m) d += e;
  return d;
}

UEAElement::UEAElement(const LieSuperalgebraSpec& spec) : even_dim_(spec.even_dim()) {
  parities_.reserve(spec.dim());
  for (std::size_t i = 0; i < spec.dim(); ++i)
    parities_.push_back(spec.basis_parity(i) == Parity::Odd ? 1 : 0);
}

UEAElement UEAElement::unit(const LieSuperalgebraSpec& spec) {
  UEAElement e(spec);
  e.add_term(PBWMonomial(spec.dim(), 0), Scalar(1));
  return e;
}

UEAElement UEAElement::generator(const LieSuperalgebraSpec& spec, std::size_t i) {
  if (i >= spec.dim()) throw error("generator index out of range");
  UEAElement e(spec);
  PBWMonomial m(spec.dim(), 0);
  m[i] = 1;
  e.add_term(m, Scalar(1));
  return e;
}

void UEAElement::add_term(const PBWMonomial& m, const Scalar& c) {
  if (m.size() != parities_.size()) throw error("monomial length mismatch");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (parities_[i] && m[i] > 1) throw error("odd exponent above 1 in PBW monomial");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar UEAElement::coeff(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

UEAElement UEAElement::operator+(const UEAElement& o) const {
  check(o);
  UEAElement r = *this;
  r.truncated_ = truncated_ || o.truncated_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

UEAElement UEAElement::operator-(const UEAElement& o) const {
  check(o);
  UEAElement r = *this;
  r.truncated_ = truncated_ || o.truncated_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

UEAElement UEAElement::operator-() const { return scaled(Scalar(-1)); }

UEAElement UEAElement::scaled(const Scalar& c) const {
  UEAElement r = *this;
  r.terms_.clear();
  for (const auto& [m, t] : terms_) r.add_term(m, t * c);
  return r;
}

std::uint32_t UEAElement::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

UEAElement UEAElement::truncated_to(std::uint32_t max_degree) const {
  UEAElement r = *this;
  r.terms_.clear();
  bool dropped = false;
  for (const auto& [m, c] : terms_) {
    if (mono_degree(m) <= max_degree)
      r.terms_.emplace(m, c);
    else
      dropped = true;
  }
  if (dropped) r.truncated_ = true;
  return r;
}

int UEAElement::term_parity(const PBWMonomial& m) const {
  int p = 0;
  for (std::size_t i = 0; i < m.size(); ++i) p += parities_[i] * static_cast<int>(m[i]);
  return p % 2;
}

bool UEAElement::is_parity_homogeneous() const {
  bool has[2] = {false, false};
  for (const auto& [m, c] : terms_) has[term_parity(m)] = true;
  return !(has[0] && has[1]);
}

Parity UEAElement::parity() const {
  if (!is_parity_homogeneous()) throw error("element is not parity homogeneous");
  for (const auto& [m, c] : terms_)
    return term_parity(m) ? Parity::Odd : Parity::Even;
  return Parity::Even;
}

UEAElement UEAElement::parity_part(Parity p) const {
  UEAElement r = *this;
  r.terms_.clear();
  int want = p == Parity::Odd ? 1 : 0;
  for (const auto& [m, c] : terms_)
    if (term_parity(m) == want) r.terms_.emplace(m, c);
  return r;
}

std::vector<std::size_t> UEAElement::mono_word(const PBWMonomial& m) const {
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::uint32_t k = 0; k < m[i]; ++k) w.push_back(i);
  return w;
}

namespace {

// Position of the strategy-selected reducible adjacent pair, or npos.
std::size_t find_reducible(const LieSuperalgebraSpec& spec, const std::vector<std::size_t>& w,
                           RewriteStrategy strategy) {
  std::size_t found = std::string::npos;
  for (std::size_t t = 0; t + 1 < w.size(); ++t) {
    bool bad = w[t] > w[t + 1] ||
               (w[t] == w[t + 1] && spec.basis_parity(w[t]) == Parity::Odd);
    if (!bad) continue;
    if (strategy == RewriteStrategy::Leftmost) return t;
    found = t;
  }
  return found;
}

PBWMonomial word_to_mono(const LieSuperalgebraSpec& spec, const std::vector<std::size_t>& w) {
  PBWMonomial m(spec.dim(), 0);
  for (std::size_t i : w) m[i] += 1;
  return m;
}

}  // namespace

UEAElement pbw_normalize_word(const LieSuperalgebraSpec& spec,
                              const std::vector<std::size_t>& word,
                              RewriteStrategy strategy) {
  for (std::size_t i : word)
    if (i >= spec.dim()) throw error("unknown generator in word");
  UEAElement out(spec);
  std::map<std::vector<std::size_t>, Scalar> active;
  active.emplace(word, Scalar(1));
  while (!active.empty()) {
    auto it = active.begin();
    std::vector<std::size_t> w = it->first;
    Scalar c = it->second;
    active.erase(it);
    if (c.is_zero()) continue;
    std::size_t t = find_reducible(spec, w, strategy);
    if (t == std::string::npos) {
      out.add_term(word_to_mono(spec, w), c);
      continue;
    }
    std::size_t j = w[t], i = w[t + 1];
    auto push = [&](const std::vector<std::size_t>& nw, const Scalar& nc) {
      if (nc.is_zero()) return;
      auto [pos, fresh] = active.emplace(nw, nc);
      if (!fresh) {
        pos->second += nc;
        if (pos->second.is_zero()) active.erase(pos);
      }
    };
    const RatVec& br = spec.brackets[j][i];
    // Word with the pair replaced by a single letter k, for every bracket term.
    auto push_bracket = [&](const Scalar& factor) {
      for (std::size_t k = 0; k < br.size(); ++k) {
        if (br[k] == 0) continue;
        std::vector<std::size_t> nw;
        nw.reserve(w.size() - 1);
        nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
        nw.push_back(k);
        nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 2, w.end());
        push(nw, factor * Scalar(br[k]));
      }
    };
    if (j == i) {
      // Odd square: b b = 1/2 [b, b].
      push_bracket(c * Scalar(Rational(1, 2)));
    } else {
      int pi = spec.basis_parity(i) == Parity::Odd ? 1 : 0;
      int pj = spec.basis_parity(j) == Parity::Odd ? 1 : 0;
      std::vector<std::size_t> swapped = w;
      std::swap(swapped[t], swapped[t + 1]);
      push(swapped, (pi & pj) != 0 ? -c : c);
      push_bracket(c);
    }
  }
  return out;
}

UEAElement uea_mul(const LieSuperalgebraSpec& spec, const UEAElement& a, const UEAElement& b,
                   RewriteStrategy strategy) {
  UEAElement out(spec);
  if (a.was_truncated() || b.was_truncated()) out.mark_truncated();
  for (const auto& [ma, ca] : a.terms()) {
    std::vector<std::size_t> wa = a.mono_word(ma);
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<std::size_t> w = wa;
      for (std::size_t i : b.mono_word(mb)) w.push_back(i);
      out = out + pbw_normalize_word(spec, w, strategy).scaled(ca * cb);
    }
  }
  return out;
}

UEAElement uea_star(const LieSuperalgebraSpec& spec, const UEAElement& d) {
  UEAElement out(spec);
  if (d.was_truncated()) out.mark_truncated();
  for (const auto& [m, c] : d.terms()) {
    std::vector<std::size_t> w = d.mono_word(m);
    std::reverse(w.begin(), w.end());
    // Each reversed letter contributes its generator factor: -1 even, -i odd.
    Scalar factor(1);
    for (std::size_t i : w)
      factor *= spec.basis_parity(i) == Parity::Odd ? Scalar(Rational(0), Rational(-1))
                                                    : Scalar(-1);
    out = out + pbw_normalize_word(spec, w).scaled(factor * c.conj());
  }
  return out;
}

UEAElement ad_apply_uea(const LieSuperalgebraSpec& spec, const ScalarMat& map_on_g,
                        const UEAElement& d) {
  const std::size_t n = spec.dim();
  if (map_on_g.rows() != n || map_on_g.cols() != n) throw error("linear map has wrong shape");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!map_on_g.at(j, i).is_zero() && spec.basis_parity(j) != spec.basis_parity(i))
        throw error("linear map does not preserve parity");
  UEAElement out(spec);
  if (d.was_truncated()) out.mark_truncated();
  for (const auto& [m, c] : d.terms()) {
    std::map<std::vector<std::size_t>, Scalar> words;
    words.emplace(std::vector<std::size_t>{}, c);
    for (std::size_t letter : d.mono_word(m)) {
      std::map<std::vector<std::size_t>, Scalar> next;
      for (const auto& [w, wc] : words) {
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar& a = map_on_g.at(j, letter);
          if (a.is_zero()) continue;
          std::vector<std::size_t> nw = w;
          nw.push_back(j);
          auto [pos, fresh] = next.emplace(nw, wc * a);
          if (!fresh) pos->second += wc * a;
        }
      }
      words = std::move(next);
    }
    for (const auto& [w, wc] : words)
      if (!wc.is_zero()) out = out + pbw_normalize_word(spec, w).scaled(wc);
  }
  return out;
}

std::vector<PBWMonomial> enumerate_monomials(const LieSuperalgebraSpec& spec, std::uint32_t cap) {
  std::vector<PBWMonomial> out;
  PBWMonomial cur(spec.dim(), 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i == spec.dim()) {
      out.push_back(cur);
      return;
    }
    std::uint32_t top = spec.basis_parity(i) == Parity::Odd ? std::min<std::uint32_t>(1, left) : left;
    for (std::uint32_t e = 0; e <= top; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, cap);
  std::sort(out.begin(), out.end(), [](const PBWMonomial& a, const PBWMonomial& b) {
    std::uint32_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

std::string mono_to_string(const LieSuperalgebraSpec& spec, const PBWMonomial& m) {
  if (m.size() != spec.dim()) throw error("monomial length mismatch");
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += spec.name_of(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<std::size_t> word_from_string(const LieSuperalgebraSpec& spec,
                                          const std::string& text) {
  std::vector<std::size_t> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1" && word.empty() && in.peek() == EOF) break;
    std::string name = tok;
    std::uint32_t power = 1;
    std::size_t caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string exp = tok.substr(caret + 1);
      if (exp.empty() || !std::all_of(exp.begin(), exp.end(), [](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
          }))
        throw schema_error("bad exponent in monomial '" + tok + "'");
      power = static_cast<std::uint32_t>(std::stoul(exp));
    }
    std::size_t idx;
    try {
      idx = spec.index_of(name);
    } catch (const error&) {
      throw schema_error("unknown generator '" + name + "' in monomial");
    }
    for (std::uint32_t k = 0; k < power; ++k) word.push_back(idx);
  }
  return word;
}

PBWMonomial mono_from_string(const LieSuperalgebraSpec& spec, const std::string& text) {
  std::vector<std::size_t> word = word_from_string(spec, text);
  PBWMonomial m(spec.dim(), 0);
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t i : word) {
    if (!first && i < prev) throw schema_error("monomial '" + text + "' is not in normal order");
    if (spec.basis_parity(i) == Parity::Odd && m[i] >= 1)
      throw schema_error("odd generator repeated in monomial '" + text + "'");
    m[i] += 1;
    prev = i;
    first = false;
  }
  return m;
}

std::string uea_to_string(const LieSuperalgebraSpec& spec, const UEAElement& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : d.terms()) {
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos)
      cs = "(" + cs + ")";
    std::string ms = mono_to_string(spec, m);
    std::string term;
    if (ms == "1")
      term = cs;
    else if (cs == "1")
      term = ms;
    else
      term = cs + " " + ms;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace sup
