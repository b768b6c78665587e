#include "anomod/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "anomod/anomaly.hpp"
#include "anomod/errors.hpp"

namespace anomod::cli {

namespace {

struct Options {
  int maxDegree = 12;
  std::size_t qOrder = 12;
  std::string ranks;  // empty: the target's default
  std::string xi;     // empty: the target's default
  std::string eulerMode = "both";
  std::string format = "text";
  std::string outPath;
  std::string tau = "0.1,1.2";
  std::string v = "0.3,0.1";
  double tol = 1e-9;
  double e2Tol = 1e-6;
  int terms = 64;
  bool noTiming = false;
};

std::complex<double> parseComplex(const std::string& text, const char* flag) {
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    std::size_t used = 0;
    double re = std::stod(text.substr(0, comma), &used);
    double im = std::stod(text.substr(comma + 1), &used);
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError(std::string(flag) + " expects RE,IM, got '" + text + "'");
  }
}

VerificationConfig configFor(const std::string& target, const Options& o) {
  VerificationConfig c = target.empty() ? VerificationConfig{} : defaultConfigFor(target);
  if (target == "p1-modularity") c.ranks = RankSpec::concrete(4, 2);
  if (!o.ranks.empty()) c.ranks = RankSpec::parse(o.ranks);
  if (!o.xi.empty()) c.xiTrivial = o.xi == "trivial";
  c.eulerMode = parseEulerMode(o.eulerMode);
  c.maxDegree = o.maxDegree;
  c.qOrder = o.qOrder;
  c.validate();
  return c;
}

int exitCodeFor(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.failed()) return kFail;
  return kPass;
}

std::string render(const std::vector<VerificationReport>& reports, const Options& o) {
  if (o.format == "json") return toJson(reports, !o.noTiming).dump(2) + "\n";
  return toText(reports);
}

nlohmann::ordered_json seriesJson(const QSeries<GradedElement>& s) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t h = 0; h < s.order(); ++h)
    arr.push_back({{"h", h}, {"value", s.coefficient(h).toString()}});
  return arr;
}

std::string seriesText(const QSeries<GradedElement>& s) {
  std::ostringstream out;
  for (std::size_t h = 0; h < s.order(); ++h) out << "q^" << h << "/2: " << s.coefficient(h).toString() << "\n";
  return out.str();
}

std::string genusText(const GradedElement& g) {
  std::ostringstream out;
  for (int d = 0; d <= g.context()->maxDegree(); d += 2) {
    GradedElement part = g.extractDegree(d);
    if (!part.isZero()) out << "degree " << d << ": " << part.toString() << "\n";
  }
  return out.str();
}

nlohmann::ordered_json genusJson(const GradedElement& g) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int d = 0; d <= g.context()->maxDegree(); d += 2) {
    GradedElement part = g.extractDegree(d);
    if (!part.isZero()) arr.push_back({{"degree", d}, {"value", part.toString()}});
  }
  return arr;
}

struct Outcome {
  std::string text;
  int code = kPass;
};

Outcome expand(const std::string& what, const Options& o) {
  const bool json = o.format == "json";
  VerificationConfig c = configFor("", o);
  if (what == "theta1" && !c.ranks.isConcrete()) throw UnsupportedConfiguration("expand theta1 needs concrete --ranks");
  ContextPtr ctx = standardContext(c.maxDegree);
  ChernModel model = standardModel(ctx, c.modelOptions());
  nlohmann::ordered_json doc;
  doc["expansion"] = what;
  doc["ranks"] = c.ranks.toString();
  doc["xi"] = c.xiTrivial ? "trivial" : "generic";
  std::ostringstream text;
  Outcome res;

  if (what == "theta2") {
    auto s = theta2Expansion(model, c.qOrder);
    const BundleExpr closed[3] = {theta2B0(), theta2B1(), theta2B2()};
    doc["closed_forms"] = nlohmann::ordered_json::array();
    for (std::size_t h = 0; h < 3 && h < s.order(); ++h) {
      bool match = s.coefficient(h) == model.ch(closed[h]);
      if (!match) res.code = kFail;
      doc["closed_forms"].push_back({{"name", "B" + std::to_string(h)}, {"bundle", closed[h].toString()}, {"matches", match}});
      text << "B" << h << " = " << closed[h].toString() << "   [" << (match ? "matches" : "DIFFERS FROM")
           << " engine q^" << h << "/2 coefficient]\n";
    }
    doc["coefficients"] = seriesJson(s);
    text << "ch(Theta_2):\n" << seriesText(s);
  } else if (what == "theta1") {
    auto s = theta1Expansion(model, BundleExpr::parse("F1 - F2"), c.qOrder);
    doc["coefficients"] = seriesJson(s);
    text << "ch(Theta_1) with V = F1 - F2:\n" << seriesText(s);
  } else if (what == "p2") {
    auto s = buildP2(c);
    doc["coefficients"] = seriesJson(s);
    text << "P2 (degree-12 coefficients):\n" << seriesText(s);
  } else if (what == "ahat" || what == "lgenus") {
    const GenusSpec& spec = what == "ahat" ? GenusSpec::aHat() : GenusSpec::lGenus();
    GradedElement g = genusForm(model.realAtom("TZ"), spec);
    doc["components"] = genusJson(g);
    text << (what == "ahat" ? "A-hat(TZ)" : "L(TZ)") << ":\n" << genusText(g);
  } else {
    throw ConfigurationError("unknown expansion '" + what + "'");
  }
  res.text = json ? doc.dump(2) + "\n" : text.str();
  return res;
}

Outcome decompose(const Options& o) {
  VerificationConfig c = configFor("", o);
  ModularDecomposition d = decomposeWeight6(buildP2(c), ModularBasis::GammaUpper0_2);
  Outcome res;
  res.code = d.residualTerms() == 0 ? kPass : kFail;
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["basis"] = d.basisName;
    doc["ranks"] = c.ranks.toString();
    doc["q_order"] = c.qOrder;
    doc["h0"] = d.h0.toString();
    doc["h1"] = d.h1.toString();
    doc["residual_terms"] = d.residualTerms();
    res.text = doc.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "basis: " << d.basisName << "\n"
         << "h0 = " << d.h0.toString() << "\n"
         << "h1 = " << d.h1.toString() << "\n"
         << "residual terms: " << d.residualTerms() << "\n";
    res.text = text.str();
  }
  return res;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.outPath.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.outPath);
  if (!file) throw std::runtime_error("cannot open '" + o.outPath + "' for writing");
  file << text;
}

void addCommonFlags(CLI::App* app, Options& o) {
  app->add_option("--max-degree", o.maxDegree, "Maximum cohomological degree (even, >= 12)");
  app->add_option("--q-order", o.qOrder, "Truncation order in half-units of q");
  app->add_option("--ranks", o.ranks, "symbolic | m=INT,n=INT | m=n+INT | n=INT");
  app->add_option("--xi", o.xi, "generic | trivial")->check(CLI::IsMember({"generic", "trivial"}));
  app->add_option("--euler-mode", o.eulerMode, "cosh | exp | both")->check(CLI::IsMember({"cosh", "exp", "both"}));
  app->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--out", o.outPath, "Write the report to PATH instead of stdout");
  app->add_flag("--no-timing", o.noTiming, "Omit elapsed_ms from JSON reports");
}

void addNumericFlags(CLI::App* app, Options& o) {
  app->add_option("--tau", o.tau, "Sample point tau as RE,IM (Im > 0)");
  app->add_option("--v", o.v, "Elliptic variable v as RE,IM");
  app->add_option("--tol", o.tol, "Tolerance for the theta and delta/epsilon laws");
  app->add_option("--e2-tol", o.e2Tol, "Tolerance for the E2 laws");
  app->add_option("--terms", o.terms, "Number of product factors / series terms")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of anomaly-factorization identities", "anomod"};
  app.require_subcommand(1);
  Options o;

  std::string verifyTarget, expandWhat, decomposeWhat, numericWhat;
  auto* verify = app.add_subcommand("verify", "Verify identities and derivation steps");
  verify->add_option("target", verifyTarget)
      ->required()
      ->check(CLI::IsMember({"all", "theorem1", "cor1", "cor2", "cor3", "gs", "sw", "agw", "remark", "p2-modularity",
                             "p1-modularity", "coeff-eqs"}));
  addCommonFlags(verify, o);

  auto* expandCmd = app.add_subcommand("expand", "Print a q-expansion or genus");
  expandCmd->add_option("what", expandWhat)->required()->check(CLI::IsMember({"theta2", "theta1", "p2", "ahat", "lgenus"}));
  addCommonFlags(expandCmd, o);

  auto* decomposeCmd = app.add_subcommand("decompose", "Decompose P2 in the weight-6 basis");
  decomposeCmd->add_option("what", decomposeWhat)->required()->check(CLI::IsMember({"p2"}));
  addCommonFlags(decomposeCmd, o);

  auto* numeric = app.add_subcommand("numeric", "Numeric transformation laws / theta-fourth identities");
  numeric->add_option("what", numericWhat)->required()->check(CLI::IsMember({"transforms", "theta4"}));
  addCommonFlags(numeric, o);
  addNumericFlags(numeric, o);

  auto* self = app.add_subcommand("self-test", "Check that injected faults are detected");
  addCommonFlags(self, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kError;
  }

  try {
    Outcome res;
    if (verify->parsed()) {
      std::vector<VerificationReport> reports;
      if (verifyTarget == "all") {
        if (!o.ranks.empty() || !o.xi.empty())
          throw ConfigurationError("'verify all' runs its own rank/xi matrix; drop --ranks/--xi");
        reports = runSuite(defaultSuite(configFor("", o)));
      } else {
        reports = runCheck(verifyTarget, configFor(verifyTarget, o));
      }
      res = {render(reports, o), exitCodeFor(reports)};
    } else if (expandCmd->parsed()) {
      res = expand(expandWhat, o);
    } else if (decomposeCmd->parsed()) {
      res = decompose(o);
    } else if (numeric->parsed()) {
      std::vector<VerificationReport> reports;
      if (numericWhat == "transforms") {
        reports = verifyNumericLaws(parseComplex(o.tau, "--tau"), parseComplex(o.v, "--v"), o.terms,
                                    NumericTolerances{o.tol, o.e2Tol});
      } else {
        if (o.qOrder < 1) throw ConfigurationError("--q-order must be positive");
        reports = verifyThetaFour(o.qOrder);
      }
      res = {render(reports, o), exitCodeFor(reports)};
    } else if (self->parsed()) {
      auto reports = selfTest();
      res = {render(reports, o), exitCodeFor(reports)};
    }
    emit(res.text, o, out);
    return res.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace anomod::cli
