// eds: elliptic divisibility sequences toolkit.
//
// Subcommands: seq, classify, height, isogeny, magnify, verify.
// Exit codes: 0 success, 1 verification failures, 2 invalid input / errors.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eds/classify.hpp"
#include "eds/curve.hpp"
#include "eds/divpoly.hpp"
#include "eds/eds_seq.hpp"
#include "eds/heights.hpp"
#include "eds/magnify.hpp"
#include "eds/real.hpp"
#include "eds/tables.hpp"
#include "eds/velu.hpp"

using json = nlohmann::json;
using namespace eds;

namespace {

struct CliConfig {
  long precision_bits = 0;  // 0 = adaptive defaults
  long trial_bound = 1000000;
  int mr_rounds = 64;
  int depth = 2;
  double tolerance = 1e-6;
  std::string format = "text";  // json, csv, text
  int parallelism = 1;
  std::string tables_path = default_tables_path();
};

json class_to_json(const TermClass& c) {
  json j;
  j["digits"] = c.digits;
  switch (c.kind) {
    case TermClass::Kind::Unit: j["kind"] = "unit"; break;
    case TermClass::Kind::ProbablePrime: j["kind"] = "probable_prime"; break;
    case TermClass::Kind::PrimePower:
      j["kind"] = "prime_power";
      j["base"] = c.base.str();
      j["exponent"] = c.exponent;
      break;
    case TermClass::Kind::CompositeLength:
      j["kind"] = "composite_length";
      j["length"] = c.length;
      j["complete"] = c.complete;
      break;
    case TermClass::Kind::Unknown: j["kind"] = "unknown"; break;
  }
  return j;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(s);
    return {n, n};
  }
  int a = std::stoi(s.substr(0, dots));
  int b = std::stoi(s.substr(dots + 2));
  if (a < 1 || b < a) fail(ErrorCode::InvalidInput, "range must be a..b with 1 <= a <= b");
  return {a, b};
}

std::string y_field_case(const WeierstrassCurve& curve, const Rational& x) {
  Rational d = curve.two_division_poly().eval(x);
  if (d.is_zero()) return "rational (two-torsion x)";
  if (d.sign() > 0 && d.num().is_perfect_square() && d.den().is_perfect_square())
    return "rational";
  return "quadratic";
}

int cmd_seq(const CliConfig& cfg, const std::string& curve_s, const std::string& x_s,
            const std::string& y_s, const std::string& range_s) {
  WeierstrassCurve curve = WeierstrassCurve::parse(curve_s);
  Rational x(x_s);
  auto [lo, hi] = parse_range(range_s);

  std::optional<Rational> y;
  if (!y_s.empty()) {
    y = Rational(y_s);
    if (!on_curve(curve, CurvePoint(x, *y)))
      fail(ErrorCode::PointNotOnCurve, "(" + x.str() + ", " + y->str() + ") not on " + curve_s);
  }

  json terms = json::array();
  json skipped = json::array();
  std::ostringstream text;
  for (int n = lo; n <= hi; ++n) {
    std::optional<EdsTerm> t;
    try {
      t = eds_term(curve, x, n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TorsionHit) throw;
    }
    if (!t) {
      skipped.push_back(n);
      text << n << ": (torsion hit, nQ at infinity)\n";
      continue;
    }
    TermClass cls = classify_term(t->B, cfg.trial_bound, cfg.mr_rounds);
    json row;
    row["n"] = n;
    row["A"] = t->A.str();
    row["B"] = t->B.str();
    row["digits_B"] = t->B.digits10();
    row["class"] = class_to_json(cls);
    terms.push_back(row);
    text << n << ": A=" << t->A.str() << " B=" << t->B.str() << " digits_B=" << t->B.digits10()
         << " class=" << cls.str() << "\n";
  }

  if (cfg.format == "json") {
    json out;
    out["command"] = "seq";
    out["curve"] = curve_s;
    out["x"] = x.str();
    if (y) out["y"] = y->str();
    out["y_field"] = y ? "rational" : y_field_case(curve, x);
    out["terms"] = terms;
    out["skipped"] = skipped;
    std::cout << out.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "n,A,B,digits_B,class\n";
    for (const auto& row : terms)
      std::cout << row["n"] << "," << row["A"].get<std::string>() << ","
                << row["B"].get<std::string>() << "," << row["digits_B"] << ","
                << row["class"]["kind"].get<std::string>() << "\n";
  } else {
    std::cout << "curve " << curve_s << ", x(Q) = " << x.str() << " (y " <<
        (y ? "rational" : y_field_case(curve, x)) << ")\n" << text.str();
  }
  return 0;
}

int cmd_classify(const CliConfig& cfg, const std::string& value_s, const std::string& curve_s,
                 const std::string& x_s, int n) {
  Integer B(0);
  if (!value_s.empty()) {
    B = Integer(value_s);
  } else {
    if (curve_s.empty() || x_s.empty())
      fail(ErrorCode::InvalidInput, "classify needs --value or --curve/--x/--n");
    WeierstrassCurve curve = WeierstrassCurve::parse(curve_s);
    B = eds_term(curve, Rational(x_s), n).B;
  }
  TermClass cls = classify_term(B, cfg.trial_bound, cfg.mr_rounds);
  if (cfg.format == "json") {
    json out;
    out["command"] = "classify";
    out["B"] = B.str();
    out["class"] = class_to_json(cls);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << B.str() << ": " << cls.str() << " (" << B.digits10() << " digits)\n";
  }
  return 0;
}

int cmd_height(const CliConfig& cfg, const std::string& curve_s, const std::string& x_s,
               int diagnostics_n) {
  WeierstrassCurve curve = WeierstrassCurve::parse(curve_s);
  Rational x(x_s);
  CanonicalHeight ch = canonical_height(curve, x, cfg.tolerance > 0 ? cfg.tolerance : 1e-10);
  Real nh = naive_height(x);

  json out;
  out["command"] = "height";
  out["curve"] = curve_s;
  out["x"] = x.str();
  out["naive_height"] = nh.str(20);
  out["canonical_height"] = ch.value.str(20);
  out["torsion"] = ch.torsion;
  out["normalization"] = "log max(|num|,den), not divided by 2";
  std::ostringstream text;
  text << "naive height h(x)        = " << nh.str(20) << "\n";
  text << "canonical height h^(Q)   = " << ch.value.str(20)
       << (ch.torsion ? "  (torsion)" : "") << "\n";

  if (diagnostics_n > 0) {
    json diag = json::array();
    text << "  n      h(x(nQ))       h/n^2        archimedean   nonarchimedean\n";
    for (const auto& r : growth_diagnostics(curve, x, diagnostics_n)) {
      json jr;
      jr["n"] = r.n;
      jr["naive"] = r.naive.str(16);
      jr["ratio"] = r.ratio.str(16);
      jr["archimedean"] = r.archimedean_part.str(16);
      jr["nonarchimedean"] = r.nonarchimedean_part.str(16);
      jr["flagged"] = r.flagged;
      diag.push_back(jr);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%3d  %-14.8g %-12.8g %-14.8g %-14.8g%s\n", r.n,
                    r.naive.to_double(), r.ratio.to_double(), r.archimedean_part.to_double(),
                    r.nonarchimedean_part.to_double(), r.flagged ? "  <- flagged" : "");
      text << buf;
    }
    out["diagnostics"] = diag;
  }
  if (cfg.format == "json")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << text.str();
  return 0;
}

int cmd_isogeny(const CliConfig& cfg, const std::string& curve_s, int m,
                const std::string& preimage_s) {
  WeierstrassCurve curve = WeierstrassCurve::parse(curve_s);
  auto kernels = rational_kernels(curve, m);
  json routes = json::array();
  std::ostringstream text;
  text << kernels.size() << " rational " << m << "-isogeny kernel(s) on " << curve_s << "\n";
  for (const auto& k : kernels) {
    IsogenyData sigma = velu_isogeny(curve, k);
    XRationalMap dual = dual_x_map(sigma);
    json r;
    r["kernel_poly"] = k.kernel_poly.str();
    if (k.torsion_witness) r["torsion_witness"] = k.torsion_witness->str();
    r["target"] = sigma.target.str();
    r["t"] = sigma.t.str();
    r["u"] = sigma.u.str();
    r["w"] = sigma.w.str();
    r["x_map"] = sigma.x_map.str();
    r["dual_x_map"] = dual.str();
    r["dual_composition_verified"] = true;  // dual_x_map verifies or throws
    text << "  kernel " << k.kernel_poly.str() << "  ->  target " << sigma.target.str() << "\n";
    text << "    x_map: " << sigma.x_map.str() << "\n";
    text << "    dual:  " << dual.str() << "\n";
    if (!preimage_s.empty()) {
      Rational xq(preimage_s);
      PreimageSplit split = preimages_x(dual, xq);
      json pj;
      pj["rational"] = json::array();
      pj["irreducible"] = json::array();
      text << "    preimages of x = " << xq.str() << " under the dual:\n";
      for (const auto& root : split.rational_roots) {
        pj["rational"].push_back(root.str());
        text << "      x = " << root.str() << "\n";
      }
      for (const auto& f : split.irreducible_factors) {
        pj["irreducible"].push_back(f.str());
        text << "      factor " << f.str() << "\n";
      }
      r["preimages"] = pj;
    }
    routes.push_back(r);
  }
  if (cfg.format == "json") {
    json out;
    out["command"] = "isogeny";
    out["curve"] = curve_s;
    out["m"] = m;
    out["routes"] = routes;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return 0;
}

int cmd_magnify(const CliConfig& cfg, const std::string& curve_s, const std::string& x_s, int m) {
  WeierstrassCurve curve = WeierstrassCurve::parse(curve_s);
  Rational x(x_s);
  MagnificationReport rep = magnification_report(curve, x, m, cfg.depth);
  json out;
  out["command"] = "magnify";
  out["curve"] = curve_s;
  out["x"] = x.str();
  out["m"] = m;
  out["depth_used"] = rep.depth_used;
  out["magnified"] = rep.magnified;
  out["witness_degree"] = rep.witness_degree;
  out["level"] = rep.level;
  out["coprime_variant"] = rep.coprime_variant;
  json chain = json::array();
  for (const auto& w : rep.chain) {
    json jw;
    jw["level"] = w.level;
    jw["multiplier"] = w.multiplier;
    jw["factor"] = w.factor.str();
    jw["x_degree"] = w.x_degree;
    if (w.field_degree) jw["field_degree"] = *w.field_degree;
    chain.push_back(jw);
  }
  out["chain"] = chain;
  json lvl1 = json::array();
  for (const auto& [f, mult] : rep.level1_factorization.factors) {
    json jf;
    jf["factor"] = f.str();
    jf["degree"] = f.degree();
    jf["multiplicity"] = mult;
    lvl1.push_back(jf);
  }
  out["level1_factors"] = lvl1;
  json ladder = json::array();
  for (const auto& lvl : rep.factor_degrees) ladder.push_back(lvl);
  out["factor_degree_ladder"] = ladder;

  if (cfg.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "x(Q) = " << x.str() << " on " << curve_s << ", multiplication by " << m
              << ", depth " << rep.depth_used << "\n";
    std::cout << "magnified: " << (rep.magnified ? "yes" : "not detected")
              << ", certified level: " << rep.level << "\n";
    for (const auto& w : rep.chain) {
      std::cout << "  level " << w.level << ": factor " << w.factor.str() << " (x-degree "
                << w.x_degree;
      if (w.field_degree) std::cout << ", field degree " << *w.field_degree;
      std::cout << ")\n";
    }
    std::cout << "level-1 factor degrees:";
    for (const auto& [f, mult] : rep.level1_factorization.factors)
      for (int i = 0; i < mult; ++i) std::cout << " " << f.degree();
    std::cout << "\ncoprime-degree variant: " << (rep.coprime_variant ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_verify(const CliConfig& cfg, const std::string& table) {
  VerifyConfig vc;
  vc.depth = cfg.depth;
  vc.trial_bound = cfg.trial_bound;
  vc.mr_rounds = cfg.mr_rounds;
  vc.tolerance = cfg.tolerance;
  vc.parallelism = cfg.parallelism;
  auto rows = load_rows(table, cfg.tables_path);
  auto outcomes = verify_rows(rows, vc);

  int pass = 0, failed = 0, undetermined = 0;
  json jout = json::array();
  std::ostringstream text;
  for (const auto& o : outcomes) {
    const char* st = o.status == VerificationOutcome::Status::Pass          ? "pass"
                     : o.status == VerificationOutcome::Status::Fail        ? "FAIL"
                                                                            : "undetermined";
    if (o.status == VerificationOutcome::Status::Pass) ++pass;
    else if (o.status == VerificationOutcome::Status::Fail) ++failed;
    else ++undetermined;
    json jo;
    jo["table"] = o.table;
    jo["row"] = o.row_index;
    jo["label"] = o.row_label;
    jo["assertion"] = o.assertion;
    jo["status"] = st;
    jo["detail"] = o.detail;
    jout.push_back(jo);
    text << o.table << "[" << o.row_index << "] " << o.row_label << " :: " << o.assertion
         << " :: " << st << (o.detail.empty() ? "" : " :: " + o.detail) << "\n";
  }
  text << "summary: " << pass << " pass, " << failed << " fail, " << undetermined
       << " undetermined\n";
  if (cfg.format == "json") {
    json out;
    out["command"] = "verify";
    out["table"] = table;
    out["depth"] = cfg.depth;
    out["outcomes"] = jout;
    out["summary"] = {{"pass", pass}, {"fail", failed}, {"undetermined", undetermined}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic divisibility sequences toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  CliConfig cfg;
  if (const char* env = std::getenv("EDS_PRECISION_BITS")) cfg.precision_bits = std::atol(env);

  app.add_option("--format", cfg.format, "output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--precision-bits", cfg.precision_bits, "minimum float working precision");
  app.add_option("--trial-bound", cfg.trial_bound, "trial division bound");
  app.add_option("--mr-rounds", cfg.mr_rounds, "Miller-Rabin rounds");
  app.add_option("--depth", cfg.depth, "magnification search depth");
  app.add_option("--tolerance", cfg.tolerance, "height tolerance");
  app.add_option("--parallelism", cfg.parallelism, "worker count for row verification");
  app.add_option("--tables", cfg.tables_path, "tables dataset path");

  std::string curve_s, x_s, y_s, range_s = "1..10", value_s, preimage_s, table_s = "all";
  int m = 2, n = 1, diagnostics_n = 0;

  auto* seq = app.add_subcommand("seq", "elliptic divisibility sequence terms");
  seq->add_option("--curve", curve_s, "curve [a1,a2,a3,a4,a6]")->required();
  seq->add_option("--x", x_s, "x(Q)")->required();
  seq->add_option("--y", y_s, "y(Q) (optional; x-only inputs allowed)");
  seq->add_option("--n", range_s, "index range a..b")->required();

  auto* cls = app.add_subcommand("classify", "classify an integer or a sequence term");
  cls->add_option("--value", value_s, "integer to classify");
  cls->add_option("--curve", curve_s, "curve [a1,a2,a3,a4,a6]");
  cls->add_option("--x", x_s, "x(Q)");
  cls->add_option("--n", n, "term index");

  auto* hgt = app.add_subcommand("height", "naive and canonical heights");
  hgt->add_option("--curve", curve_s, "curve [a1,a2,a3,a4,a6]")->required();
  hgt->add_option("--x", x_s, "x(Q)")->required();
  hgt->add_option("--diagnostics", diagnostics_n, "emit per-n growth table up to this n");

  auto* iso = app.add_subcommand("isogeny", "rational kernels, Velu isogeny, dual map");
  iso->add_option("--curve", curve_s, "curve [a1,a2,a3,a4,a6]")->required();
  iso->add_option("--m", m, "prime degree (2, 3, 5, 7)")->required();
  iso->add_option("--preimage", preimage_s, "also factor dual(x) - this x-coordinate");

  auto* mag = app.add_subcommand("magnify", "magnified-point search");
  mag->add_option("--curve", curve_s, "curve [a1,a2,a3,a4,a6]")->required();
  mag->add_option("--x", x_s, "x(Q)")->required();
  mag->add_option("--m", m, "multiplier")->required();

  auto* ver = app.add_subcommand("verify", "replay the embedded tables");
  ver->add_option("--table", table_s, "1, 2, 3, ex or all");

  CLI11_PARSE(app, argc, argv);

  if (cfg.precision_bits > 0) set_min_working_precision(cfg.precision_bits);

  try {
    if (cfg.trial_bound < 1 || cfg.mr_rounds < 1 || cfg.depth < 1 || cfg.tolerance <= 0 ||
        cfg.parallelism < 1)
      fail(ErrorCode::InvalidInput, "bounds, depth, tolerance and parallelism must be positive");
    if (seq->parsed()) return cmd_seq(cfg, curve_s, x_s, y_s, range_s);
    if (cls->parsed()) return cmd_classify(cfg, value_s, curve_s, x_s, n);
    if (hgt->parsed()) return cmd_height(cfg, curve_s, x_s, diagnostics_n);
    if (iso->parsed()) return cmd_isogeny(cfg, curve_s, m, preimage_s);
    if (mag->parsed()) return cmd_magnify(cfg, curve_s, x_s, m);
    if (ver->parsed()) return cmd_verify(cfg, table_s);
  } catch (const Error& e) {
    std::cerr << "error: code=" << Error::code_name(e.code()) << " msg=\"" << e.what() << "\"\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: code=internal msg=\"" << e.what() << "\"\n";
    return 2;
  }
  return 2;
}
