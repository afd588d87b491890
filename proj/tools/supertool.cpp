#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "super/gns.hpp"
#include "super/hcpair.hpp"
#include "super/json_io.hpp"
#include "super/moment.hpp"
#include "super/monoid.hpp"
#include "super/superfunctions.hpp"
#include "super/uea.hpp"
#include "super/version.hpp"

using njson = nlohmann::ordered_json;
using namespace sup;

namespace {

struct Ctx {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  long degree = -1;
  long samples = 100;
  long lambda_size = 3;
  njson inputs = njson::object();
  int exit_code = 0;
  njson out;

  std::string load(const std::string& path) {
    std::string text = read_text_file(path);
    inputs[path] = sha256_hex(text);
    return text;
  }
  njson report() const {
    njson r;
    r["tool"] = kToolName;
    r["version"] = kToolVersion;
    r["seed"] = seed;
    r["tolerance"] = tolerance;
    r["inputs"] = inputs;
    return r;
  }
  long degree_or(long fallback) const { return degree < 0 ? fallback : degree; }
};

njson mat_to_jvalue(const ScalarMat& m) {
  njson rows = njson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    njson row = njson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

UEAElement uea_from_jvalue(const LieSuperalgebraSpec& spec, const njson& j) {
  if (!j.is_array()) throw schema_error("'d' must be an array of [coefficient, word] pairs");
  UEAElement d(spec);
  for (const njson& term : j) {
    if (!term.is_array() || term.size() != 2 || !term.at(0).is_string() ||
        !term.at(1).is_string())
      throw schema_error("'d' entries must be [coefficient, word] string pairs");
    Scalar c = Scalar::parse(term.at(0).get<std::string>());
    UEAElement m = pbw_normalize_word(spec, word_from_string(spec, term.at(1).get<std::string>()));
    d = d + m.scaled(c);
  }
  return d;
}

SElement selement_from_json(const HCPair& pair, const std::string& text) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::exception& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("g") || !j.contains("d"))
    throw schema_error("monoid element needs 'g' and 'd'");
  SElement s{GroupElement{}, UEAElement(pair.spec)};
  for (const njson& e : j.at("g")) {
    if (e.is_string())
      s.g.coords.push_back(rational_from_string(e.get<std::string>()));
    else if (e.is_number_integer())
      s.g.coords.push_back(Rational(e.get<long>()));
    else
      throw schema_error("'g' coordinates must be rational strings");
  }
  pair.group->check_element(s.g);
  s.d = uea_from_jvalue(pair.spec, j.at("d"));
  return s;
}

njson selement_to_jvalue(const HCPair& pair, const SElement& s) {
  njson g = njson::array();
  for (const auto& c : s.g.coords) g.push_back(rational_to_string(c));
  njson d = njson::array();
  for (const auto& [m, c] : s.d.terms())
    d.push_back(njson::array({c.to_string(), mono_to_string(pair.spec, m)}));
  return njson{{"g", std::move(g)}, {"d", std::move(d)}};
}

// Moment-backed GNS data shared by the gns subcommands: generators are the
// monomials of degree < d as (1_G, m), acted on by the basis directions.
struct MomentGnsSetup {
  MomentFunctional lam;
  PDFunction phi;
  std::vector<SElement> generators;
  std::vector<SElement> acting;
};

MomentGnsSetup moment_gns_setup(Ctx& ctx, const HCPair& pair, const std::string& moment_path,
                                long d) {
  MomentGnsSetup s;
  s.lam = moment_from_json(pair.spec, ctx.load(moment_path));
  s.phi = pdfunction_from_moment(pair, s.lam);
  GroupElement e = pair.group->identity();
  for (const auto& m : enumerate_monomials(pair.spec, static_cast<std::uint32_t>(d - 1))) {
    UEAElement el(pair.spec);
    el.add_term(m, Scalar(1));
    s.generators.push_back(SElement{e, el});
  }
  for (std::size_t i = 0; i < pair.spec.dim(); ++i)
    s.acting.push_back(SElement{e, UEAElement::generator(pair.spec, i)});
  return s;
}

int run_cli(CLI::App& app, Ctx& ctx, int argc, char** argv) {
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tolerance", ctx.tolerance, "Float comparison tolerance")
      ->capture_default_str();
  app.add_option("--degree", ctx.degree, "Degree / truncation parameter");
  app.add_option("--samples", ctx.samples, "Randomized sample count")->capture_default_str();
  app.add_option("--seed", ctx.seed, "Random seed echoed in reports")->capture_default_str();
  app.add_option("--lambda-size", ctx.lambda_size, "Grassmann generator count")
      ->capture_default_str();

  static std::string in_path, pair_path, algebra_path, left_path, right_path, morphism_path,
      skeleton_path, point_path, hom_path, moment_path, word, word1, word2, xname;

  auto load_pair = [&ctx](const std::string& path) {
    std::string dir = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return pair_from_json(ctx.load(path), dir);
  };
  auto load_algebra = [&ctx](const std::string& path) {
    return algebra_from_json(ctx.load(path));
  };

  CLI::App* algebra = app.add_subcommand("algebra", "Lie superalgebra checks");
  CLI::App* jacobi = algebra->add_subcommand("jacobi", "Super Jacobi identity");
  jacobi->add_option("--in", in_path, "algebra.json")->required();
  jacobi->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(in_path);
    JacobiReport rep = check_super_jacobi(spec);
    njson r = ctx.report();
    r["ok"] = rep.ok;
    njson v = njson::array();
    for (const auto& viol : rep.violations) {
      njson defect = njson::array();
      for (const auto& c : viol.defect) defect.push_back(rational_to_string(c));
      v.push_back(njson{{"i", spec.name_of(viol.i)},
                        {"j", spec.name_of(viol.j)},
                        {"k", spec.name_of(viol.k)},
                        {"defect", std::move(defect)}});
    }
    r["violations"] = std::move(v);
    ctx.out = r;
    ctx.exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* pbw = app.add_subcommand("pbw", "Enveloping-algebra normal forms");
  CLI::App* normalize = pbw->add_subcommand("normalize", "PBW normal form of a word");
  normalize->add_option("--algebra", algebra_path, "algebra.json")->required();
  normalize->add_option("--word", word, "Generator word, e.g. \"x x\"")->required();
  normalize->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(algebra_path);
    UEAElement d = pbw_normalize_word(spec, word_from_string(spec, word));
    UEAElement d2 = pbw_normalize_word(spec, word_from_string(spec, word),
                                       RewriteStrategy::Rightmost);
    njson r = ctx.report();
    r["result"] = uea_to_string(spec, d);
    r["confluent"] = (d == d2);
    ctx.out = r;
    ctx.exit_code = (d == d2) ? 0 : 1;
  });

  CLI::App* star = app.add_subcommand("star", "Star involution on U(g_C)");
  star->add_option("--algebra", algebra_path, "algebra.json")->required();
  star->add_option("--word", word, "Generator word")->required();
  star->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(algebra_path);
    UEAElement d = pbw_normalize_word(spec, word_from_string(spec, word));
    njson r = ctx.report();
    r["result"] = uea_to_string(spec, uea_star(spec, d));
    ctx.out = r;
  });

  CLI::App* hcpair = app.add_subcommand("hcpair", "Harish-Chandra pair checks");
  CLI::App* hccheck = hcpair->add_subcommand("check", "Axioms on random samples");
  hccheck->add_option("--pair", pair_path, "pair.json")->required();
  hccheck->callback([&] {
    HCPair pair = load_pair(pair_path);
    HCReport rep = validate_hcpair(pair, static_cast<int>(ctx.samples), ctx.seed);
    njson r = ctx.report();
    r["ok"] = rep.ok;
    r["defects"] = rep.defects;
    ctx.out = r;
    ctx.exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* lambda = app.add_subcommand("lambda", "Lambda-point operations");
  CLI::App* lmul = lambda->add_subcommand("mul", "Product of two points");
  lmul->add_option("--pair", pair_path, "pair.json")->required();
  lmul->add_option("--left", left_path, "point.json")->required();
  lmul->add_option("--right", right_path, "point.json")->required();
  lmul->callback([&] {
    HCPair pair = load_pair(pair_path);
    LambdaPoint a = point_from_json(pair, ctx.load(left_path));
    LambdaPoint b = point_from_json(pair, ctx.load(right_path));
    njson r = ctx.report();
    r["result"] = njson::parse(point_to_json(pair, lambda_mul(pair, a, b)));
    ctx.out = r;
  });
  CLI::App* lexp = lambda->add_subcommand("exp", "Exponential of an even tensor");
  lexp->add_option("--pair", pair_path, "pair.json")->required();
  lexp->add_option("--in", in_path, "tensor.json")->required();
  lexp->callback([&] {
    HCPair pair = load_pair(pair_path);
    SuperTensor v = tensor_from_json(pair.spec, ctx.load(in_path));
    njson r = ctx.report();
    r["result"] = njson::parse(point_to_json(pair, lambda_exp(pair, v)));
    ctx.out = r;
  });
  CLI::App* lfun = lambda->add_subcommand("functor", "Transport along a Grassmann morphism");
  lfun->add_option("--pair", pair_path, "pair.json")->required();
  lfun->add_option("--in", in_path, "point.json")->required();
  lfun->add_option("--morphism", morphism_path, "morphism.json")->required();
  lfun->callback([&] {
    HCPair pair = load_pair(pair_path);
    LambdaPoint p = point_from_json(pair, ctx.load(in_path));
    GrMorphism rho = morphism_from_json(ctx.load(morphism_path));
    njson r = ctx.report();
    r["result"] = njson::parse(point_to_json(pair, lambda_functor(pair, rho, p)));
    ctx.out = r;
  });
  CLI::App* lbullet = lambda->add_subcommand("bullet", "Bullet additivity on random souls");
  lbullet->add_option("--pair", pair_path, "pair.json")->required();
  lbullet->callback([&] {
    HCPair pair = load_pair(pair_path);
    HCReport rep = check_bullet_additivity(pair, static_cast<int>(ctx.lambda_size),
                                           static_cast<int>(ctx.samples), ctx.seed);
    njson r = ctx.report();
    r["ok"] = rep.ok;
    r["defects"] = rep.defects;
    ctx.out = r;
    ctx.exit_code = rep.ok ? 0 : 1;
  });

  CLI::App* skeleton = app.add_subcommand("skeleton", "Superfunction skeletons");
  CLI::App* seval = skeleton->add_subcommand("eval", "Grassmann-Taylor evaluation");
  seval->add_option("--pair", pair_path, "pair.json")->required();
  seval->add_option("--skeleton", skeleton_path, "skeleton.json")->required();
  seval->add_option("--point", point_path, "tensor.json, even with body")->required();
  seval->callback([&] {
    HCPair pair = load_pair(pair_path);
    SuperfunctionSkeleton h = skeleton_from_json(pair.spec, ctx.load(skeleton_path));
    SuperTensor pt = tensor_from_json(pair.spec, ctx.load(point_path));
    GrassmannElement value = eval_skeleton(h, pt);
    njson r = ctx.report();
    r["result"] = njson::parse(grassmann_to_json(value));
    ctx.out = r;
  });

  CLI::App* phi = app.add_subcommand("phi", "Superfunction / operator correspondence");
  CLI::App* pfwd = phi->add_subcommand("forward", "Phi of a skeleton as a table");
  pfwd->add_option("--pair", pair_path, "pair.json")->required();
  pfwd->add_option("--skeleton", skeleton_path, "skeleton.json")->required();
  pfwd->callback([&] {
    HCPair pair = load_pair(pair_path);
    SuperfunctionSkeleton h = skeleton_from_json(pair.spec, ctx.load(skeleton_path));
    long cap = ctx.degree_or(3);
    HomForm hf = phi_forward_hom(h, pair, static_cast<std::uint32_t>(cap));
    njson r = ctx.report();
    r["result"] = njson::parse(homform_to_json(pair.spec, hf));
    ctx.out = r;
  });
  CLI::App* pinv = phi->add_subcommand("inverse", "Skeleton from a table");
  pinv->add_option("--pair", pair_path, "pair.json")->required();
  pinv->add_option("--hom", hom_path, "hom.json")->required();
  pinv->callback([&] {
    HCPair pair = load_pair(pair_path);
    HomForm hf = homform_from_json(pair.spec, ctx.load(hom_path));
    long cap = ctx.degree_or(static_cast<long>(pair.spec.odd_dim()));
    PhiInverseResult res = phi_inverse(hf, pair, static_cast<std::uint32_t>(cap));
    njson r = ctx.report();
    r["ok"] = res.consistent;
    r["skeleton"] = njson::parse(skeleton_to_json(pair.spec, res.skeleton));
    njson resid = njson::array();
    for (const auto& [m, poly] : res.residuals)
      resid.push_back(njson::array({mono_to_string(pair.spec, m), poly.to_string()}));
    r["residuals"] = std::move(resid);
    ctx.out = r;
    ctx.exit_code = res.consistent ? 0 : 1;
  });
  CLI::App* prt = phi->add_subcommand("roundtrip", "inverse(forward(h)) == h");
  prt->add_option("--pair", pair_path, "pair.json")->required();
  prt->add_option("--skeleton", skeleton_path, "skeleton.json")->required();
  prt->callback([&] {
    HCPair pair = load_pair(pair_path);
    SuperfunctionSkeleton h = skeleton_from_json(pair.spec, ctx.load(skeleton_path));
    long cap = ctx.degree_or(std::max<long>(3, h.odd_cap()));
    HomForm hf = phi_forward_hom(h, pair, static_cast<std::uint32_t>(cap));
    PhiInverseResult res = phi_inverse(hf, pair, h.odd_cap());
    bool ok = res.consistent && res.skeleton == h;
    njson r = ctx.report();
    r["ok"] = ok;
    r["consistent"] = res.consistent;
    r["skeleton_match"] = (res.skeleton == h);
    ctx.out = r;
    ctx.exit_code = ok ? 0 : 1;
  });

  CLI::App* monoid = app.add_subcommand("monoid", "Involutive monoid G x U(g_C)");
  CLI::App* mmul = monoid->add_subcommand("mul", "Twisted product");
  mmul->add_option("--pair", pair_path, "pair.json")->required();
  mmul->add_option("--left", left_path, "selement.json")->required();
  mmul->add_option("--right", right_path, "selement.json")->required();
  mmul->callback([&] {
    HCPair pair = load_pair(pair_path);
    SElement a = selement_from_json(pair, ctx.load(left_path));
    SElement b = selement_from_json(pair, ctx.load(right_path));
    njson r = ctx.report();
    r["result"] = selement_to_jvalue(pair, monoid_mul(pair, a, b));
    ctx.out = r;
  });
  CLI::App* mstar = monoid->add_subcommand("star", "Involution");
  mstar->add_option("--pair", pair_path, "pair.json")->required();
  mstar->add_option("--in", in_path, "selement.json")->required();
  mstar->callback([&] {
    HCPair pair = load_pair(pair_path);
    SElement a = selement_from_json(pair, ctx.load(in_path));
    njson r = ctx.report();
    r["result"] = selement_to_jvalue(pair, monoid_star(pair, a));
    ctx.out = r;
  });

  CLI::App* gns = app.add_subcommand("gns", "GNS construction from a moment table");
  CLI::App* gbuild = gns->add_subcommand("build", "Build the cyclic representation");
  gbuild->add_option("--pair", pair_path, "pair.json")->required();
  gbuild->add_option("--moment", moment_path, "moment.json")->required();
  auto run_gns_build = [&](bool verify_only, bool intertwine) {
    HCPair pair = load_pair(pair_path);
    long d = ctx.degree_or(3);
    if (d < 2) throw schema_error("--degree must be at least 2");
    MomentGnsSetup setup = moment_gns_setup(ctx, pair, moment_path, d);

    MomentReport mrep = moment_check(pair.spec, setup.lam, ctx.tolerance);
    if (!mrep.psd) {
      njson r = ctx.report();
      r["ok"] = false;
      r["defects"] = mrep.defects;
      ctx.out = r;
      ctx.exit_code = 1;
      return;
    }
    GNSModel model =
        gns_build(pair, setup.phi, setup.generators, setup.acting, ctx.tolerance);
    GNSVerifyReport vrep =
        gns_verify(pair, model, setup.phi, static_cast<int>(ctx.samples), ctx.seed);
    njson r = ctx.report();
    if (intertwine) {
      std::vector<SElement> reversed(setup.generators.rbegin(), setup.generators.rend());
      GNSModel other = gns_build(pair, setup.phi, reversed, setup.acting, ctx.tolerance);
      IntertwinerResult ires = gns_intertwiner(pair, model, other, ctx.tolerance);
      r["ok"] = ires.ok;
      r["rank"] = model.quotient.rank;
      r["residual"] = ires.residual;
      r["t"] = mat_to_jvalue(ires.t);
      r["defects"] = ires.defects;
      ctx.out = r;
      ctx.exit_code = ires.ok ? 0 : 1;
      return;
    }
    r["ok"] = vrep.ok;
    r["rank"] = model.quotient.rank;
    if (!verify_only) {
      r["gram"] = mat_to_jvalue(model.quotient.gram);
      njson ops = njson::object();
      for (std::size_t i = 0; i < model.op_elements.size(); ++i)
        ops[uea_to_string(pair.spec, model.op_elements[i].d)] =
            mat_to_jvalue(model.op_matrices[i]);
      r["operators"] = std::move(ops);
    }
    r["residuals"] = njson{{"reconstruction", vrep.reconstruction},
                           {"star", vrep.star},
                           {"unitarity", vrep.unitarity}};
    r["defects"] = vrep.defects;
    ctx.out = r;
    ctx.exit_code = vrep.ok ? 0 : 1;
  };
  gbuild->callback([&, run_gns_build] { run_gns_build(false, false); });
  CLI::App* gverify = gns->add_subcommand("verify", "Reconstruction, star, unitarity residuals");
  gverify->add_option("--pair", pair_path, "pair.json")->required();
  gverify->add_option("--moment", moment_path, "moment.json")->required();
  gverify->callback([&, run_gns_build] { run_gns_build(true, false); });
  CLI::App* ginter = gns->add_subcommand("intertwine", "Unitary between two build orders");
  ginter->add_option("--pair", pair_path, "pair.json")->required();
  ginter->add_option("--moment", moment_path, "moment.json")->required();
  ginter->callback([&, run_gns_build] { run_gns_build(false, true); });

  CLI::App* moment = app.add_subcommand("moment", "Truncated moment functionals");
  CLI::App* mcheck = moment->add_subcommand("check", "Evenness, Hermitian, PSD certificate");
  mcheck->add_option("--algebra", algebra_path, "algebra.json")->required();
  mcheck->add_option("--in", in_path, "moment.json")->required();
  mcheck->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(algebra_path);
    MomentFunctional lam = moment_from_json(spec, ctx.load(in_path));
    MomentReport rep = moment_check(spec, lam, ctx.tolerance);
    njson r = ctx.report();
    r["ok"] = rep.ok;
    r["d"] = rep.d;
    r["even_ok"] = rep.even_ok;
    r["hermitian_ok"] = rep.hermitian_ok;
    r["psd"] = rep.psd;
    r["gram"] = mat_to_jvalue(rep.gram);
    r["defects"] = rep.defects;
    ctx.out = r;
    ctx.exit_code = rep.ok ? 0 : 1;
  });
  CLI::App* mgns = moment->add_subcommand("gns", "Truncated GNS block maps");
  mgns->add_option("--algebra", algebra_path, "algebra.json")->required();
  mgns->add_option("--in", in_path, "moment.json")->required();
  mgns->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(algebra_path);
    MomentFunctional lam = moment_from_json(spec, ctx.load(in_path));
    long d = ctx.degree_or(3);
    MomentReport mrep = moment_check(spec, lam, ctx.tolerance);
    njson r = ctx.report();
    if (!mrep.psd) {
      r["ok"] = false;
      r["defects"] = mrep.defects;
      ctx.out = r;
      ctx.exit_code = 1;
      return;
    }
    TruncatedGNS t = moment_gns(spec, lam, static_cast<std::uint32_t>(d), ctx.tolerance);
    bool ok = t.bracket_report.ok && t.symmetry_report.ok;
    r["ok"] = ok;
    r["verdict"] = t.verdict;
    r["ranks"] = njson{{"full", t.full.rank}, {"mid", t.mid.rank}, {"low", t.low.rank}};
    njson defects = njson::array();
    for (const auto& s : t.bracket_report.defects) defects.push_back(s);
    for (const auto& s : t.symmetry_report.defects) defects.push_back(s);
    r["defects"] = std::move(defects);
    ctx.out = r;
    ctx.exit_code = ok ? 0 : 1;
  });
  CLI::App* mgrow = moment->add_subcommand("growth", "Heuristic Carleman-style sequence");
  mgrow->add_option("--algebra", algebra_path, "algebra.json")->required();
  mgrow->add_option("--in", in_path, "moment.json")->required();
  mgrow->add_option("--d1", word1, "Left word (default 1)");
  mgrow->add_option("--d2", word2, "Right word (default 1)");
  mgrow->add_option("--x", xname, "Even basis direction")->required();
  mgrow->callback([&] {
    LieSuperalgebraSpec spec = load_algebra(algebra_path);
    MomentFunctional lam = moment_from_json(spec, ctx.load(in_path));
    UEAElement d1 = word1.empty() ? UEAElement::unit(spec)
                                  : pbw_normalize_word(spec, word_from_string(spec, word1));
    UEAElement d2 = word2.empty() ? UEAElement::unit(spec)
                                  : pbw_normalize_word(spec, word_from_string(spec, word2));
    long n = ctx.degree_or(4);
    GrowthReport rep = growth_diagnostic(spec, lam, d1, d2, spec.index_of(xname),
                                         static_cast<std::uint32_t>(n));
    njson r = ctx.report();
    r["label"] = "HEURISTIC";
    r["a"] = rep.a;
    r["ratios"] = rep.ratios;
    r["partial_sum"] = rep.partial_sum;
    ctx.out = r;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const incomplete_error& e) {
    std::cout << njson{{"error", e.what()}, {"missing", e.missing}}.dump(2) << std::endl;
    return 2;
  } catch (const error& e) {
    std::cout << njson{{"error", e.what()}}.dump(2) << std::endl;
    return 2;
  }

  std::cout << ctx.out.dump(2) << std::endl;
  return ctx.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computer algebra for Lie supergroups, superfunctions, and moment problems"};
  Ctx ctx;
  return run_cli(app, ctx, argc, argv);
}
