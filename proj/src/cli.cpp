#include "ftap/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ftap/casebook.hpp"
#include "ftap/construct.hpp"
#include "ftap/criteria.hpp"
#include "ftap/marginals.hpp"
#include "ftap/scenario.hpp"

namespace ftap::cli {

using Index = Eigen::Index;

namespace {

std::string listOf(const VectorQ& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + toString(v(i));
  return s + "]";
}

std::string holds(bool b) { return b ? "holds" : "fails"; }

void writeMeasure(std::ostream& os, const std::string& title, const Measure& p) {
  os << title << ":\n";
  const auto& labels = p.space()->labels();
  for (std::size_t w = 0; w < p.size(); ++w) os << "  " << labels[w] << ": " << toString(p(w)) << '\n';
}

void writeVariable(std::ostream& os, const std::string& title, const RandomVariable& x) {
  os << title << ":\n";
  const auto& labels = x.space()->labels();
  for (std::size_t w = 0; w < x.size(); ++w) os << "  " << labels[w] << ": " << toString(x(w)) << '\n';
}

// Nonzero multipliers of the rows and bounds, named after the program.
void writeCertificate(std::ostream& os, const std::string& title, const Certificate& c) {
  const LinearProgram& lp = c.program;
  const LpOutcome& out = c.outcome;
  os << title << ":\n";
  os << "  status: " << toString(out.status) << '\n';
  os << "  verified: " << (c.verify() ? "yes" : "no") << '\n';
  if (out.status == LpStatus::Optimal) os << "  value: " << toString(out.value) << '\n';
  if (out.status == LpStatus::Unbounded) {
    for (Index j = 0; j < out.ray.size(); ++j)
      if (out.ray(j).sign() != 0)
        os << "  ray " << lp.variableName(static_cast<std::size_t>(j)) << ": " << toString(out.ray(j)) << '\n';
    return;
  }
  for (Index i = 0; i < out.rowMultipliers.size(); ++i)
    if (out.rowMultipliers(i).sign() != 0)
      os << "  multiplier " << lp.rows()[static_cast<std::size_t>(i)].name << ": " << toString(out.rowMultipliers(i))
         << '\n';
  for (Index j = 0; j < out.lowerMultipliers.size(); ++j)
    if (out.lowerMultipliers(j).sign() != 0)
      os << "  lower bound " << lp.variableName(static_cast<std::size_t>(j)) << ": "
         << toString(out.lowerMultipliers(j)) << '\n';
  for (Index j = 0; j < out.upperMultipliers.size(); ++j)
    if (out.upperMultipliers(j).sign() != 0)
      os << "  upper bound " << lp.variableName(static_cast<std::size_t>(j)) << ": "
         << toString(out.upperMultipliers(j)) << '\n';
}

void writeHeader(std::ostream& os, const std::string& command, const Scenario& s) {
  os << "command: " << command << '\n';
  os << "atoms: " << s.space->size() << '\n';
  os << "generators: " << s.cone.generatorCount() << '\n';
  os << "cone_kind: " << toString(s.cone.kind()) << '\n';
}

int commandCheck(const Scenario& s, std::ostream& os) {
  writeHeader(os, "check", s);
  const ConeSpec& cone = s.cone;
  const Measure p0 = s.space->reference();

  const NaReport na = checkNA(cone);
  const NaReport a = checkConditionA(cone);
  const NaReport d = checkConditionD(cone);
  const KReport kb = minKB(cone, p0);
  const KReport kbs = minKBStar(cone, p0);
  const EsmResult esm = findESM(cone);

  os << "no_arbitrage: " << holds(na.holds) << '\n';
  if (na.witness) os << "  witness: " << listOf(na.witness->values()) << '\n';
  os << "condition_a: " << holds(a.holds) << '\n';
  os << "condition_d: " << holds(d.holds) << '\n';
  os << "min_k_b: " << toString(kb.value) << '\n';
  os << "min_k_bstar: " << toString(kbs.value) << '\n';
  if (kbs.value.isFinite()) os << "c_from_k: " << toString(convertKtoC(kbs.value.value())) << '\n';
  if (cone.isLinear()) os << "c_bstarstar: " << toString(cMinBStarStar(cone, p0).value) << '\n';

  bool conditionC = false;
  if (kb.value.isFinite()) {
    const auto pairs = buildConditionC(cone, p0, kb.value.value());
    conditionC = verifyConditionC(cone, pairs);
    os << "condition_c: " << holds(conditionC) << " (k = " << toString(kb.value) << ", " << pairs.size()
       << (pairs.size() == 1 ? " pair" : " pairs") << ")\n";
  } else {
    os << "condition_c: fails (no finite k)\n";
  }
  os << "equivalent_esm: " << (esm.equivalent ? "exists" : "none") << " (tau = " << toString(esm.tau) << ")\n";

  const bool verdicts[] = {na.holds, a.holds, d.holds, kb.value.isFinite(), kbs.value.isFinite(), conditionC,
                           esm.equivalent};
  const bool all = std::all_of(std::begin(verdicts), std::end(verdicts), [](bool b) { return b; });
  const bool none = std::none_of(std::begin(verdicts), std::end(verdicts), [](bool b) { return b; });
  os << "verdict: " << (all ? "all conditions hold" : none ? "all conditions fail" : "inconsistent") << '\n';
  return all ? Affirmative : CertifiedNegative;
}

int commandEsm(const Scenario& s, std::ostream& os) {
  writeHeader(os, "esm", s);
  const EsmResult esm = findESM(s.cone);
  os << "equivalent_esm: " << (esm.equivalent ? "exists" : "none") << '\n';
  os << "tau: " << toString(esm.tau) << '\n';
  if (esm.equivalent) {
    writeMeasure(os, "measure", *esm.measure);
    writeCertificate(os, "certificate", esm.certificate);
    return Affirmative;
  }
  writeCertificate(os, "certificate", esm.certificate);
  if (esm.measure) writeMeasure(os, "maximal_support_measure", *esm.measure);
  if (esm.supportCertificate) writeCertificate(os, "support_certificate", *esm.supportCertificate);
  return CertifiedNegative;
}

int commandKmin(const Scenario& s, const std::string& mode, const std::string& qPath, std::ostream& os) {
  const Measure q = qPath.empty() ? s.space->reference() : loadMeasure(qPath, s.space);
  KReport report = [&] {
    if (mode == "bstar") return minKBStar(s.cone, q);
    if (mode == "b") return minKB(s.cone, q);
    return cMinBStarStar(s.cone, q);
  }();
  writeHeader(os, "kmin", s);
  os << "mode: " << mode << '\n';
  writeMeasure(os, "q", q);
  os << "value: " << toString(report.value) << '\n';
  if (report.attaining) writeVariable(os, "attaining", *report.attaining);
  if (report.ray) writeVariable(os, "ray", *report.ray);
  writeCertificate(os, "certificate", report.certificate);
  if (mode == "cstarstar") {
    const bool below = report.value < ExtendedRational(Rational(1));
    os << "criterion: " << (below ? "holds (value < 1)" : "fails (value >= 1)") << '\n';
    return below ? Affirmative : CertifiedNegative;
  }
  return report.value.isFinite() ? Affirmative : CertifiedNegative;
}

int commandBand(const Scenario& s, const std::string& kText, const std::string& qPath, std::ostream& os) {
  const Rational k = parseRational(kText);
  const Measure q = qPath.empty() ? s.space->reference() : loadMeasure(qPath, s.space);
  const MeasureSearch search = findESMinBand(s.cone, q, k);
  writeHeader(os, "band", s);
  os << "k: " << toString(k) << '\n';
  os << "t: " << toString(k + 1) << '\n';
  os << "band_measure: " << (search.found() ? "found" : "none") << '\n';
  if (search.found()) writeMeasure(os, "measure", *search.measure);
  writeCertificate(os, "certificate", search.certificate);
  return search.found() ? Affirmative : CertifiedNegative;
}

int commandCouple(const Scenario& s, std::ostream& os) {
  if (!s.product) throw ScenarioError("couple needs a scenario with a product block");
  const ProductSpace& ps = s.product->product;
  const CouplingResult result = coupleWithMarginals(ps, s.product->marginals);
  writeHeader(os, "couple", s);
  os << "rows: " << ps.rowLabels().size() << '\n';
  os << "cols: " << ps.colLabels().size() << '\n';
  os << "coupling: " << (result.feasible ? "exists" : "none") << '\n';
  os << "tau: " << toString(result.tau) << '\n';
  if (result.coupling) {
    const MatrixQ table = ps.table(*result.coupling);
    os << "table:\n";
    for (Index r = 0; r < table.rows(); ++r) os << "  " << ps.rowLabels()[static_cast<std::size_t>(r)] << ": "
                                                << listOf(table.row(r).transpose()) << '\n';
    const MarginalPair got = marginalsOf(ps, *result.coupling);
    os << "marginal1: " << listOf(got.first) << '\n';
    os << "marginal2: " << listOf(got.second) << '\n';
  }
  writeCertificate(os, "certificate", result.certificate);
  os << "inf_criterion (Q = P0): " << toString(evaluateInfCriterion(ps, s.product->marginals, s.space->reference()).value)
     << '\n';
  return result.feasible ? Affirmative : CertifiedNegative;
}

struct CaseOptions {
  std::string name;
  std::uint64_t seed = 1;
  std::optional<std::size_t> atoms, generators, n, N, M, d, samples, measures;
  std::optional<std::string> eps;
  bool adversarial = false;
};

int commandCase(const CaseOptions& o, std::ostream& os) {
  CaseReport report;
  if (o.name == "finite-ftap") {
    report = caseFiniteDimFTAP(o.seed, o.atoms.value_or(4), o.generators.value_or(2));
  } else if (o.name == "sign-sequences") {
    report = caseSignSequences(o.n.value_or(10), std::nullopt, o.seed, o.samples.value_or(100));
  } else if (o.name == "approx-esfa") {
    report = caseApproxESFA(parseRational(o.eps.value_or("1/10")), o.N.value_or(8), o.n.value_or(4), o.seed,
                            o.samples.value_or(200));
  } else if (o.name == "nflvr-gap") {
    report = caseNFLVRGap(o.M.value_or(6), o.n.value_or(2), o.seed, o.measures.value_or(3));
  } else if (o.name == "rokhlin-schachermayer") {
    report = caseRokhlinSchachermayer(o.seed, o.d.value_or(3), o.atoms.value_or(6), o.adversarial);
  } else {
    throw std::invalid_argument("unknown case \"" + o.name +
                                "\" (finite-ftap, sign-sequences, approx-esfa, nflvr-gap, rokhlin-schachermayer)");
  }
  os << render(report);
  return report.anyRefuted() ? CertifiedNegative : Affirmative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact super-martingale measure checks on finite probability spaces", "ftap"};
  app.require_subcommand(1);

  std::string scenarioPath, mode, qPath, kText;
  auto* check = app.add_subcommand("check", "Evaluate every equivalent condition and the ESM search");
  check->add_option("scenario", scenarioPath, "Scenario file")->required();
  auto* esm = app.add_subcommand("esm", "Search for an equivalent super-martingale measure");
  esm->add_option("scenario", scenarioPath, "Scenario file")->required();
  auto* kmin = app.add_subcommand("kmin", "Least constant of a condition");
  kmin->add_option("--mode", mode, "bstar, b or cstarstar")->required()->check(CLI::IsMember({"bstar", "b", "cstarstar"}));
  kmin->add_option("--q", qPath, "Measure file (defaults to the reference probability)");
  kmin->add_option("scenario", scenarioPath, "Scenario file")->required();
  auto* band = app.add_subcommand("band", "Super-martingale measure inside the band around Q");
  band->add_option("--k", kText, "Constant k >= 0")->required();
  band->add_option("--q", qPath, "Measure file (defaults to the reference probability)");
  band->add_option("scenario", scenarioPath, "Scenario file")->required();
  auto* couple = app.add_subcommand("couple", "Equivalent coupling with the scenario's marginals");
  couple->add_option("scenario", scenarioPath, "Scenario file")->required();

  CaseOptions co;
  auto* kase = app.add_subcommand("case", "Run a casebook example");
  kase->add_option("name", co.name, "Case name")->required();
  kase->add_option("--seed", co.seed, "Random seed");
  kase->add_option("--atoms", co.atoms, "Number of atoms");
  kase->add_option("--generators", co.generators, "Number of generators");
  kase->add_option("--n", co.n, "Generator count or truncation index");
  kase->add_option("--N", co.N, "Poisson truncation level");
  kase->add_option("--M", co.M, "Grid upper end");
  kase->add_option("--d", co.d, "Number of payoffs");
  kase->add_option("--eps", co.eps, "Epsilon as a rational");
  kase->add_option("--samples", co.samples, "Random coefficient vectors");
  kase->add_option("--measures", co.measures, "Random measures checked");
  kase->add_flag("--adversarial", co.adversarial, "Concentrate the density on one atom");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Affirmative : InputError;
  }

  std::ostringstream report;
  int code = InputError;
  try {
    if (*kase) {
      code = commandCase(co, report);
    } else {
      const Scenario s = loadScenario(scenarioPath);
      if (*check)
        code = commandCheck(s, report);
      else if (*esm)
        code = commandEsm(s, report);
      else if (*kmin)
        code = commandKmin(s, mode, qPath, report);
      else if (*band)
        code = commandBand(s, kText, qPath, report);
      else
        code = commandCouple(s, report);
    }
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  }
  out << report.str();
  return code;
}

}  // namespace ftap::cli
