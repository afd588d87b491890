#include "super/json_io.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "super/group.hpp"

namespace sup {
namespace {

using njson = nlohmann::ordered_json;

njson parse_doc(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const njson::exception& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
}

const njson& need(const njson& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw schema_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string need_string(const njson& j, const char* key) {
  const njson& v = need(j, key);
  if (!v.is_string()) throw schema_error(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

long need_integer(const njson& j, const char* key) {
  const njson& v = need(j, key);
  if (!v.is_number_integer()) throw schema_error(std::string("key '") + key + "' must be an integer");
  return v.get<long>();
}

Rational rational_from_jvalue(const njson& v) {
  if (v.is_string()) {
    try {
      return rational_from_string(v.get<std::string>());
    } catch (const error& e) {
      throw schema_error(e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw schema_error("expected a rational \"p/q\" string");
}

Scalar scalar_from_jvalue(const njson& v) {
  if (v.is_string()) {
    try {
      return Scalar::parse(v.get<std::string>());
    } catch (const error& e) {
      throw schema_error(e.what());
    }
  }
  if (v.is_number()) return Scalar::flt(v.get<double>());
  if (v.is_object()) {
    const njson& re = need(v, "re");
    const njson& im = need(v, "im");
    if (re.is_string() && im.is_string())
      return Scalar(rational_from_jvalue(re), rational_from_jvalue(im));
    if (re.is_number() && im.is_number())
      return Scalar::flt(re.get<double>(), im.get<double>());
    throw schema_error("scalar re/im parts must both be strings or both numbers");
  }
  throw schema_error("malformed scalar value");
}

njson scalar_to_jvalue(const Scalar& s) {
  if (s.is_exact()) {
    if (s.exact_im() == 0) return njson(rational_to_string(s.exact_re()));
    return njson{{"re", rational_to_fraction_string(s.exact_re())},
                 {"im", rational_to_fraction_string(s.exact_im())}};
  }
  return njson{{"re", s.float_value().real()}, {"im", s.float_value().imag()}};
}

void check_name(const std::string& name) {
  if (name.empty()) throw schema_error("empty basis name");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw schema_error("basis name '" + name + "' must be alphanumeric");
}

GrassmannElement grassmann_from_jvalue(const njson& j) {
  long n = need_integer(j, "n");
  if (n < 0 || n > kMaxGrassmannGenerators)
    throw schema_error("Grassmann generator count out of range");
  GrassmannElement a(static_cast<int>(n), Scalar(0));
  const njson& coeffs = need(j, "coeffs");
  if (!coeffs.is_array()) throw schema_error("'coeffs' must be an array");
  for (const njson& item : coeffs) {
    const njson& tup = need(item, "I");
    if (!tup.is_array()) throw schema_error("'I' must be an array of indices");
    std::vector<int> tuple;
    for (const njson& e : tup) {
      if (!e.is_number_integer()) throw schema_error("'I' entries must be integers");
      tuple.push_back(e.get<int>());
    }
    a.add_term(tuple_to_mask(tuple, static_cast<int>(n)), scalar_from_jvalue(need(item, "c")));
  }
  return a;
}

njson grassmann_to_jvalue(const GrassmannElement& a) {
  njson coeffs = njson::array();
  for (const auto& [mask, c] : a.terms())
    coeffs.push_back(njson{{"I", mask_to_tuple(mask)}, {"c", scalar_to_jvalue(c)}});
  return njson{{"n", a.n()}, {"coeffs", std::move(coeffs)}};
}

std::size_t index_of_checked(const LieSuperalgebraSpec& spec, const std::string& name) {
  try {
    return spec.index_of(name);
  } catch (const error& e) {
    throw schema_error(e.what());
  }
}

MultiPoly poly_from_string(const std::string& text, const std::vector<std::string>& vars) {
  try {
    return MultiPoly::parse(text, vars);
  } catch (const error& e) {
    throw schema_error(std::string("bad polynomial '") + text + "': " + e.what());
  }
}

njson tensor_to_jvalue(const LieSuperalgebraSpec& spec, const SuperTensor& t) {
  njson terms = njson::array();
  for (const auto& [key, c] : t.terms())
    terms.push_back(njson{{"basis", spec.name_of(key.first)},
                          {"I", mask_to_tuple(key.second)},
                          {"c", scalar_to_jvalue(c)}});
  return njson{{"lambda_n", t.lambda_n()}, {"terms", std::move(terms)}};
}

SuperTensor tensor_from_jvalue(const LieSuperalgebraSpec& spec, const njson& j) {
  long n = need_integer(j, "lambda_n");
  if (n < 0 || n > kMaxGrassmannGenerators)
    throw schema_error("Grassmann generator count out of range");
  SuperTensor t(spec, static_cast<int>(n), Scalar(0));
  const njson& terms = need(j, "terms");
  if (!terms.is_array()) throw schema_error("'terms' must be an array");
  for (const njson& item : terms) {
    std::size_t basis = index_of_checked(spec, need_string(item, "basis"));
    const njson& tup = need(item, "I");
    std::vector<int> tuple;
    for (const njson& e : tup) tuple.push_back(e.get<int>());
    t.add_term(basis, tuple_to_mask(tuple, static_cast<int>(n)),
               scalar_from_jvalue(need(item, "c")));
  }
  return t;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write file: " + path);
  out << text;
}

// FIPS 180-4, for input digests echoed in reports.
std::string sha256_hex(const std::string& bytes) {
  static constexpr std::uint32_t k[64] = {
      0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u,
      0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u,
      0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u,
      0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau,
      0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
      0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu, 0x53380d13u,
      0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
      0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u,
      0x19a4c116u, 0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au,
      0x5b9cca4fu, 0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
      0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};
  std::uint32_t h[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                        0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};

  std::string msg = bytes;
  const std::uint64_t bitlen = static_cast<std::uint64_t>(bytes.size()) * 8;
  msg.push_back(static_cast<char>(0x80));
  while (msg.size() % 64 != 56) msg.push_back('\0');
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<char>((bitlen >> (8 * i)) & 0xff));

  auto rotr = [](std::uint32_t x, int r) { return (x >> r) | (x << (32 - r)); };
  for (std::size_t off = 0; off < msg.size(); off += 64) {
    std::uint32_t w[64];
    for (int t = 0; t < 16; ++t) {
      w[t] = 0;
      for (int b = 0; b < 4; ++b)
        w[t] = (w[t] << 8) | static_cast<std::uint8_t>(msg[off + 4 * t + b]);
    }
    for (int t = 16; t < 64; ++t) {
      std::uint32_t s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
      std::uint32_t s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
      w[t] = w[t - 16] + s0 + w[t - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
    std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int t = 0; t < 64; ++t) {
      std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      std::uint32_t ch = (e & f) ^ (~e & g);
      std::uint32_t t1 = hh + s1 + ch + k[t] + w[t];
      std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint32_t v : h)
    for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xf]);
  return out;
}

LieSuperalgebraSpec algebra_from_json(const std::string& text) {
  njson j = parse_doc(text);
  LieSuperalgebraSpec spec;
  for (const char* key : {"even_basis", "odd_basis"}) {
    const njson& arr = need(j, key);
    if (!arr.is_array()) throw schema_error(std::string("'") + key + "' must be an array");
    for (const njson& e : arr) {
      if (!e.is_string()) throw schema_error("basis names must be strings");
      std::string name = e.get<std::string>();
      check_name(name);
      (key[0] == 'e' ? spec.even_basis : spec.odd_basis).push_back(name);
    }
  }
  std::set<std::string> seen(spec.even_basis.begin(), spec.even_basis.end());
  for (const auto& n : spec.odd_basis)
    if (!seen.insert(n).second) throw schema_error("duplicate basis name '" + n + "'");

  const std::size_t dim = spec.dim();
  spec.brackets.assign(dim, std::vector<RatVec>(dim, spec.zero_vec()));
  std::set<std::pair<std::size_t, std::size_t>> given;
  if (j.contains("brackets")) {
    const njson& brs = j.at("brackets");
    if (!brs.is_array()) throw schema_error("'brackets' must be an array");
    for (const njson& entry : brs) {
      std::size_t i = index_of_checked(spec, need_string(entry, "left"));
      std::size_t jdx = index_of_checked(spec, need_string(entry, "right"));
      if (!given.insert({i, jdx}).second)
        throw schema_error("duplicate bracket entry for (" + spec.name_of(i) + ", " +
                           spec.name_of(jdx) + ")");
      const njson& result = need(entry, "result");
      if (!result.is_array()) throw schema_error("'result' must be an array");
      RatVec v = spec.zero_vec();
      for (const njson& term : result) {
        if (!term.is_array() || term.size() != 2)
          throw schema_error("bracket terms must be [coefficient, name] pairs");
        v[index_of_checked(spec, term.at(1).get<std::string>())] += rational_from_jvalue(term.at(0));
      }
      spec.brackets[i][jdx] = v;
    }
  }
  // Unstated mirror entries follow from super antisymmetry.
  for (const auto& [i, jdx] : given) {
    if (i == jdx || given.count({jdx, i})) continue;
    bool both_odd = spec.basis_parity(i) == Parity::Odd && spec.basis_parity(jdx) == Parity::Odd;
    RatVec v = spec.brackets[i][jdx];
    for (auto& c : v) c = both_odd ? c : -c;
    spec.brackets[jdx][i] = v;
  }
  try {
    spec.validate_structure();
  } catch (const error& e) {
    throw schema_error(e.what());
  }
  return spec;
}

std::string algebra_to_json(const LieSuperalgebraSpec& spec) {
  njson j;
  j["even_basis"] = spec.even_basis;
  j["odd_basis"] = spec.odd_basis;
  njson brs = njson::array();
  for (std::size_t i = 0; i < spec.dim(); ++i)
    for (std::size_t jdx = i; jdx < spec.dim(); ++jdx) {
      const RatVec& v = spec.brackets[i][jdx];
      njson result = njson::array();
      for (std::size_t t = 0; t < v.size(); ++t)
        if (v[t] != 0)
          result.push_back(njson::array({rational_to_fraction_string(v[t]), spec.name_of(t)}));
      if (!result.empty())
        brs.push_back(njson{{"left", spec.name_of(i)},
                            {"right", spec.name_of(jdx)},
                            {"result", std::move(result)}});
    }
  j["brackets"] = std::move(brs);
  return j.dump(2) + "\n";
}

HCPair pair_from_json(const std::string& text, const std::string& base_dir) {
  njson j = parse_doc(text);
  const njson& alg = need(j, "algebra");
  LieSuperalgebraSpec spec;
  if (alg.is_string()) {
    std::string path = alg.get<std::string>();
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    spec = algebra_from_json(read_text_file(path));
  } else if (alg.is_object()) {
    spec = algebra_from_json(alg.dump());
  } else {
    throw schema_error("'algebra' must be a path or an inline object");
  }

  const njson& grp = need(j, "group");
  std::string model = need_string(grp, "model");
  HCPair pair;
  pair.spec = spec;
  if (model == "nilpotent_exp") {
    pair.group = std::make_shared<NilpotentExp>(spec);
  } else if (model == "scaling_torus") {
    const njson& warr = need(grp, "weights");
    if (!warr.is_array()) throw schema_error("'weights' must be an array of integer rows");
    std::vector<std::vector<long>> weights;
    for (const njson& row : warr) {
      if (!row.is_array() || row.size() != spec.dim())
        throw schema_error("each weight row needs one integer per basis element");
      std::vector<long> r;
      for (const njson& e : row) {
        if (!e.is_number_integer()) throw schema_error("weights must be integers");
        r.push_back(e.get<long>());
      }
      weights.push_back(std::move(r));
    }
    pair.group = std::make_shared<ScalingTorus>(spec, std::move(weights));
  } else {
    throw schema_error("unknown group model '" + model + "'");
  }
  return pair;
}

GrassmannElement grassmann_from_json(const std::string& text) {
  return grassmann_from_jvalue(parse_doc(text));
}

std::string grassmann_to_json(const GrassmannElement& a) {
  return grassmann_to_jvalue(a).dump(2) + "\n";
}

GrMorphism morphism_from_json(const std::string& text) {
  njson j = parse_doc(text);
  GrMorphism phi;
  phi.source_n = static_cast<int>(need_integer(j, "source_n"));
  phi.target_n = static_cast<int>(need_integer(j, "target_n"));
  const njson& images = need(j, "images");
  if (!images.is_array()) throw schema_error("'images' must be an array");
  for (const njson& im : images) phi.images.push_back(grassmann_from_jvalue(im));
  try {
    phi.validate();
  } catch (const error& e) {
    throw schema_error(e.what());
  }
  return phi;
}

std::string morphism_to_json(const GrMorphism& phi) {
  njson images = njson::array();
  for (const auto& im : phi.images) images.push_back(grassmann_to_jvalue(im));
  return njson{{"source_n", phi.source_n}, {"target_n", phi.target_n}, {"images", images}}
             .dump(2) +
         "\n";
}

SuperTensor tensor_from_json(const LieSuperalgebraSpec& spec, const std::string& text) {
  return tensor_from_jvalue(spec, parse_doc(text));
}

std::string tensor_to_json(const LieSuperalgebraSpec& spec, const SuperTensor& t) {
  return tensor_to_jvalue(spec, t).dump(2) + "\n";
}

LambdaPoint point_from_json(const HCPair& pair, const std::string& text) {
  njson j = parse_doc(text);
  const njson& g = need(j, "g");
  if (!g.is_array() || g.size() != pair.group->coord_dim())
    throw schema_error("'g' needs one coordinate per group dimension");
  LambdaPoint p{GroupElement{}, SuperTensor(pair.spec, 0, Scalar(0))};
  for (const njson& e : g) p.g.coords.push_back(rational_from_jvalue(e));
  pair.group->check_element(p.g);
  p.soul = tensor_from_jvalue(pair.spec, need(j, "soul"));
  validate_soul(p.soul);
  return p;
}

std::string point_to_json(const HCPair& pair, const LambdaPoint& p) {
  njson g = njson::array();
  for (const auto& c : p.g.coords) g.push_back(rational_to_string(c));
  return njson{{"g", std::move(g)}, {"soul", tensor_to_jvalue(pair.spec, p.soul)}}.dump(2) + "\n";
}

SuperfunctionSkeleton skeleton_from_json(const LieSuperalgebraSpec& spec,
                                         const std::string& text) {
  njson j = parse_doc(text);
  long even_dim = need_integer(j, "even_dim");
  if (even_dim < 0 || static_cast<std::size_t>(even_dim) != spec.even_dim())
    throw schema_error("'even_dim' does not match the algebra");
  long cap = need_integer(j, "odd_cap");
  if (cap < 0) throw schema_error("'odd_cap' must be nonnegative");
  SuperfunctionSkeleton h = SuperfunctionSkeleton::empty(spec, static_cast<std::uint32_t>(cap));
  const njson& forms = need(j, "forms");
  if (!forms.is_array()) throw schema_error("'forms' must be an array");
  for (const njson& form : forms) {
    const njson& args = need(form, "args");
    if (!args.is_array()) throw schema_error("'args' must be an array of odd basis names");
    if (need_integer(form, "m") != static_cast<long>(args.size()))
      throw schema_error("'m' must equal the number of arguments");
    std::vector<int> tuple;
    for (const njson& a : args) {
      if (!a.is_string()) throw schema_error("'args' entries must be names");
      std::size_t idx = index_of_checked(spec, a.get<std::string>());
      if (idx < spec.even_dim()) throw schema_error("skeleton arguments must be odd");
      tuple.push_back(static_cast<int>(idx - spec.even_dim()));
    }
    try {
      h.set_form(tuple, poly_from_string(need_string(form, "poly"), h.chart_vars()));
    } catch (const error& e) {
      throw schema_error(e.what());
    }
  }
  return h;
}

std::string skeleton_to_json(const LieSuperalgebraSpec& spec, const SuperfunctionSkeleton& h) {
  njson forms = njson::array();
  for (const auto& [tuple, poly] : h.forms()) {
    njson args = njson::array();
    for (int i : tuple) args.push_back(spec.odd_basis[static_cast<std::size_t>(i)]);
    forms.push_back(njson{{"m", tuple.size()}, {"args", std::move(args)}, {"poly", poly.to_string()}});
  }
  return njson{{"even_dim", spec.even_dim()}, {"odd_cap", h.odd_cap()}, {"forms", std::move(forms)}}
             .dump(2) +
         "\n";
}

HomForm homform_from_json(const LieSuperalgebraSpec& spec, const std::string& text) {
  njson j = parse_doc(text);
  long cap = need_integer(j, "cap");
  if (cap < 0) throw schema_error("'cap' must be nonnegative");
  HomForm h;
  h.chart_vars = chart_vars_for(spec);
  h.cap = static_cast<std::uint32_t>(cap);
  const njson& values = need(j, "values");
  if (!values.is_object()) throw schema_error("'values' must be an object");
  for (const auto& [key, val] : values.items()) {
    PBWMonomial m;
    try {
      m = mono_from_string(spec, key);
    } catch (const error& e) {
      throw schema_error(e.what());
    }
    if (mono_degree(m) > h.cap)
      throw schema_error("monomial '" + key + "' is above the table cap");
    if (!val.is_string()) throw schema_error("table values must be polynomial strings");
    h.set_value(m, poly_from_string(val.get<std::string>(), h.chart_vars));
  }
  return h;
}

std::string homform_to_json(const LieSuperalgebraSpec& spec, const HomForm& h) {
  njson values = njson::object();
  for (const auto& [m, poly] : h.values) values[mono_to_string(spec, m)] = poly.to_string();
  return njson{{"cap", h.cap}, {"values", std::move(values)}}.dump(2) + "\n";
}

MomentFunctional moment_from_json(const LieSuperalgebraSpec& spec, const std::string& text) {
  njson j = parse_doc(text);
  long cap = need_integer(j, "degree_cap");
  if (cap < 0) throw schema_error("'degree_cap' must be nonnegative");
  MomentFunctional lam;
  lam.degree_cap = static_cast<std::uint32_t>(cap);
  const njson& values = need(j, "values");
  if (!values.is_object()) throw schema_error("'values' must be an object");
  for (const auto& [key, val] : values.items()) {
    UEAElement norm;
    try {
      norm = pbw_normalize_word(spec, word_from_string(spec, key));
    } catch (const error& e) {
      throw schema_error(e.what());
    }
    if (norm.terms().size() != 1)
      throw schema_error("moment key '" + key + "' must normalize to a single PBW monomial");
    const auto& [m, coef] = *norm.terms().begin();
    if (mono_degree(m) > lam.degree_cap)
      throw schema_error("moment key '" + key + "' is above the degree cap");
    Scalar given = scalar_from_jvalue(val);
    Scalar value = given.is_float() ? given * coef.inv().to_float() : given * coef.inv();
    auto it = lam.values.find(m);
    if (it != lam.values.end()) {
      bool same = (it->second.is_exact() && value.is_exact()) ? it->second == value
                                                              : approx_equal(it->second, value, 1e-12);
      if (!same)
        throw schema_error("moment keys disagree after normalization at '" + key + "'");
    } else {
      lam.values.emplace(m, value);
    }
  }
  return lam;
}

std::string moment_to_json(const LieSuperalgebraSpec& spec, const MomentFunctional& lam) {
  njson values = njson::object();
  for (const auto& [m, v] : lam.values) values[mono_to_string(spec, m)] = scalar_to_jvalue(v);
  return njson{{"degree_cap", lam.degree_cap}, {"values", std::move(values)}}.dump(2) + "\n";
}

}  // namespace sup
