#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ftap/casebook.hpp"
#include "ftap/construct.hpp"
#include "ftap/criteria.hpp"
#include "ftap/marginals.hpp"
#include "support/instances.hpp"
#include "support/oracle.hpp"

using namespace ftap;
using testing_support::Draw;

namespace {

// Pinned budgets and tolerances.
constexpr double kEquivalenceBudgetSeconds = 60.0;
constexpr double kOracleBudgetSeconds = 120.0;
constexpr double kRatioTolerance = 1e-3;
constexpr double kInequalitySlack = 1e-9;
constexpr double kTruncatedRatioTolerance = 1e-9;

constexpr int kEquivalenceInstances = 600;
constexpr int kBandInstances = 200;
constexpr int kDensityTriples = 200;
constexpr int kConversionInstances = 100;
constexpr int kFeasibleCouplings = 100;
constexpr int kRandomCouplings = 100;
constexpr int kRokhlinSeeds = 50;
constexpr int kApproxSamples = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void note(bool ok, const std::string& what) {
    if (ok) return;
    if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  bool any() const { return count_ > 0; }
  std::string summary() const { return std::to_string(count_) + " failures: " + first_; }

 private:
  int count_ = 0;
  std::string first_;
};

Outcome finish(const Failures& f, std::string detail) {
  if (f.any()) return {false, f.summary()};
  return {true, std::move(detail)};
}

bool isSupermartingale(const ConeSpec& cone, const Measure& p) {
  for (const auto& g : cone.generators()) {
    const Rational e = expectation(p, g);
    if (cone.isLinear() ? e != 0 : e > 0) return false;
  }
  return true;
}

std::string describe(const oracle::Instance& inst) {
  std::ostringstream os;
  os << (inst.linear ? "linear" : "cone") << " w=[";
  for (std::size_t i = 0; i < inst.weights.size(); ++i) os << (i ? "," : "") << toString(inst.weights[i]);
  os << "] g=";
  for (const auto& g : inst.generators) {
    os << "(";
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << toString(g[i]);
    os << ")";
  }
  return os.str();
}

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. The five verdicts agree and every certificate verifies.
Outcome equivalenceSuite() {
  const auto start = std::chrono::steady_clock::now();
  Draw draw(1001);
  Failures f;
  int holding = 0;
  for (int i = 0; i < kEquivalenceInstances; ++i) {
    const auto atoms = static_cast<std::size_t>(draw.between(1, 8));
    const auto gens = static_cast<std::size_t>(draw.between(0, 5));
    const bool linear = draw.coin();
    const auto inst = testing_support::randomInstance(draw, atoms, gens, 3, linear);
    const ConeSpec cone = testing_support::toCone(inst);
    const NaReport na = checkNA(cone);
    const NaReport a = checkConditionA(cone);
    const NaReport d = checkConditionD(cone);
    const KReport k = minKBStar(cone, cone.space()->reference());
    const EsmResult esm = findESM(cone);
    const bool v = na.holds;
    f.note(a.holds == v && d.holds == v && k.value.isFinite() == v && esm.equivalent == v,
           "verdicts disagree on " + describe(inst));
    f.note(na.certificate.verify() && a.certificate.verify() && d.certificate.verify() && k.certificate.verify() &&
               esm.certificate.verify(),
           "certificate rejected on " + describe(inst));
    if (esm.equivalent) f.note(isSupermartingale(cone, *esm.measure), "ESM violates a generator");
    holding += v;
  }
  const double elapsed = secondsSince(start);
  f.note(elapsed < kEquivalenceBudgetSeconds, "runtime over budget");
  std::ostringstream os;
  os << kEquivalenceInstances << " instances, " << holding << " with NA, " << elapsed << " s";
  return finish(f, os.str());
}

// 2. Band reproduction and its converse with s/r = t^2.
Outcome bandReproduction() {
  Draw draw(2002);
  Failures f;
  int finite = 0;
  for (int i = 0; i < kBandInstances; ++i) {
    const auto inst = testing_support::randomInstance(draw, static_cast<std::size_t>(draw.between(1, 8)),
                                                      static_cast<std::size_t>(draw.between(1, 5)), 3, draw.coin());
    const ConeSpec cone = testing_support::toCone(inst);
    const Measure p0 = cone.space()->reference();
    const KReport k = minKBStar(cone, p0);
    if (!k.value.isFinite()) continue;
    ++finite;
    const Rational t = k.value.value() + 1;
    const MeasureSearch band = findESMinBand(cone, p0, k.value.value());
    if (!band.found()) {
      f.note(false, "band infeasible on " + describe(inst));
      continue;
    }
    for (std::size_t w = 0; w < p0.size(); ++w)
      f.note(p0(w) / t <= (*band.measure)(w) && (*band.measure)(w) <= t * p0(w), "outside band");
    f.note(isSupermartingale(cone, *band.measure), "band measure violates a generator");
    for (const auto& g : cone.generators())
      f.note(expectation(p0, g) <= t * t * expectation(p0, valueDecomp(g).second), "converse fails");
  }
  f.note(finite > 0, "no finite instance");
  return finish(f, std::to_string(kBandInstances) + " instances, " + std::to_string(finite) + " with finite k");
}

// 3. The single-payoff density identity.
Outcome densityIdentity() {
  Draw draw(3003);
  Failures f;
  int tested = 0;
  while (tested < kDensityTriples) {
    const auto n = static_cast<std::size_t>(draw.between(1, 8));
    const SpacePtr s = FiniteProbSpace::make(testing_support::toVector(testing_support::randomWeights(draw, n)));
    const Measure q(s, testing_support::toVector(testing_support::randomWeights(draw, n)));
    VectorQ xv(static_cast<Eigen::Index>(n));
    for (auto& x : xv) x = Rational(draw.between(-5, 5));
    const RandomVariable x(s, xv);
    const Rational eq = expectation(q, x);
    const Rational eMinus = expectation(q, valueDecomp(x).second);
    const long num = draw.between(0, 6);
    const long den = draw.between(1, 4);
    Rational k(num, den);
    if (eq > k * eMinus) {
      if (eMinus == 0) continue;
      k = eq / eMinus;
    }
    ++tested;
    const SingleXDensity d = singleXDensity(q, x, k);
    Rational qNonneg(0), qNeg(0);
    for (std::size_t w = 0; w < n; ++w) (x(w) >= 0 ? qNonneg : qNeg) += q(w);
    f.note(expectation(d.measure, x) * (qNonneg + d.t * qNeg) == eq - k * eMinus, "identity fails");
  }
  const SpacePtr i1 = testing_support::space({"3/5", "2/5"});
  const SingleXDensity d = singleXDensity(i1->reference(), RandomVariable(i1, testing_support::vec({"1", "-1"})),
                                          Rational(1, 2));
  f.note(d.measure.weights() == testing_support::vec({"1/2", "1/2"}), "I1 density measure is not (1/2, 1/2)");
  return finish(f, std::to_string(tested) + " triples, I1 gives (1/2, 1/2)");
}

// 4. c <-> k conversions.
Outcome conversions() {
  Draw draw(4004);
  Failures f;
  int tested = 0, attempts = 0;
  while (tested < kConversionInstances && attempts++ < 100 * kConversionInstances) {
    const auto inst = testing_support::randomInstance(draw, static_cast<std::size_t>(draw.between(2, 7)),
                                                      static_cast<std::size_t>(draw.between(1, 4)), 3, true);
    const ConeSpec cone = testing_support::toCone(inst);
    const Measure p0 = cone.space()->reference();
    const KReport k = minKBStar(cone, p0);
    if (!k.value.isFinite()) continue;
    ++tested;
    const KReport c = cMinBStarStar(cone, p0);
    f.note(c.value.isFinite() && c.value.value() < 1 && convertCtoK(c.value.value()) == k.value.value(),
           "convertCtoK(c) != k on " + describe(inst));
  }
  f.note(tested == kConversionInstances, "too few finite instances");
  for (const Rational& k : {Rational(0), Rational(1, 2), Rational(3), Rational(100)})
    f.note(convertCtoK(convertKtoC(k)) == k, "round trip fails at " + toString(k));
  const SpacePtr i1 = testing_support::space({"3/5", "2/5"});
  const ConeSpec cone(i1, {RandomVariable(i1, testing_support::vec({"1", "-1"}))}, ConeKind::LinearSpace);
  f.note(minKBStar(cone, i1->reference()).value == ExtendedRational(Rational(1, 2)) &&
             cMinBStarStar(cone, i1->reference()).value == ExtendedRational(Rational(1, 5)),
         "I1 pair is not (1/2, 1/5)");
  return finish(f, std::to_string(tested) + " linear instances, round trips exact, I1 = (1/2, 1/5)");
}

// 5. Vertex-enumeration oracle.
class OracleSweep {
 public:
  explicit OracleSweep(Failures& f) : f_(f) {}

  void compare(const oracle::Instance& inst) {
    ++count_;
    const ConeSpec cone = testing_support::toCone(inst);
    const Measure p0 = cone.space()->reference();
    const std::string what = describe(inst);
    f_.note(checkNA(cone).holds == oracle::naHolds(inst), "NA differs on " + what);
    const KReport kb = minKB(cone, p0);
    f_.note(kb.value == oracle::minKB(inst, inst.weights) && kb.certificate.verify(), "minKB differs on " + what);
    const KReport kbs = minKBStar(cone, p0);
    f_.note(kbs.value == oracle::minKBStar(inst, inst.weights) && kbs.certificate.verify(),
            "minKBStar differs on " + what);
    if (inst.linear) {
      const KReport c = cMinBStarStar(cone, p0);
      f_.note(c.value == ExtendedRational(oracle::cMin(inst, inst.weights)) && c.certificate.verify(),
              "cMin differs on " + what);
    }
    const EsmResult esm = findESM(cone);
    const auto tau = oracle::esmTau(inst);
    f_.note(esm.tau == (tau ? *tau : Rational(0)) && esm.certificate.verify(), "ESM tau differs on " + what);
    const std::vector<bool> charged = oracle::maximalSupport(inst);
    AtomSet expected;
    for (std::size_t w = 0; w < charged.size(); ++w)
      if (charged[w]) expected.push_back(w);
    f_.note(maximalSupport(cone).atoms == expected, "maximal support differs on " + what);
  }

  int count() const { return count_; }

 private:
  Failures& f_;
  int count_ = 0;
};

oracle::Vec fixedWeights(std::size_t atoms) {
  static const std::array<std::vector<const char*>, 5> table{{{},
                                                              {"1"},
                                                              {"3/5", "2/5"},
                                                              {"1/2", "1/3", "1/6"},
                                                              {"2/5", "3/10", "1/5", "1/10"}}};
  oracle::Vec w;
  for (const char* s : table.at(atoms)) w.push_back(parseRational(s));
  return w;
}

std::vector<oracle::Vec> allVectors(std::size_t atoms) {
  std::vector<oracle::Vec> out{oracle::Vec{}};
  for (std::size_t a = 0; a < atoms; ++a) {
    std::vector<oracle::Vec> next;
    for (const auto& v : out)
      for (int e = -2; e <= 2; ++e) {
        oracle::Vec w = v;
        w.push_back(Rational(e));
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

// Every multiset of `size` generators drawn from `vectors`.
void forEachMultiset(const std::vector<oracle::Vec>& vectors, std::size_t size,
                     const std::function<void(const std::vector<oracle::Vec>&)>& f) {
  std::vector<std::size_t> pick(size, 0);
  while (true) {
    std::vector<oracle::Vec> gens;
    for (auto i : pick) gens.push_back(vectors[i]);
    f(gens);
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == vectors.size() - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[i - 1];
  }
}

Outcome oracleComparison() {
  const auto start = std::chrono::steady_clock::now();
  Failures f;
  OracleSweep sweep(f);
  // Exhaustive shapes: (atoms, max generators).
  const std::array<std::pair<std::size_t, std::size_t>, 4> exhaustive{{{1, 3}, {2, 3}, {3, 2}, {4, 1}}};
  for (const auto& [atoms, maxGens] : exhaustive) {
    const auto vectors = allVectors(atoms);
    for (std::size_t g = 0; g <= maxGens; ++g)
      forEachMultiset(vectors, g, [&](const std::vector<oracle::Vec>& gens) {
        for (bool linear : {false, true}) sweep.compare({fixedWeights(atoms), gens, linear});
      });
  }
  const int exhaustiveCount = sweep.count();
  // Seeded sample of the shapes too large to enumerate, with random weights.
  const std::array<std::tuple<std::size_t, std::size_t, int>, 3> sampled{{{3, 3, 3000}, {4, 2, 3000}, {4, 3, 3000}}};
  Draw draw(5005);
  for (const auto& [atoms, gens, count] : sampled)
    for (int i = 0; i < count; ++i) sweep.compare(testing_support::randomInstance(draw, atoms, gens, 2, draw.coin()));
  const double elapsed = secondsSince(start);
  f.note(elapsed < kOracleBudgetSeconds, "runtime over budget");
  std::ostringstream os;
  os << exhaustiveCount << " exhaustive + " << sweep.count() - exhaustiveCount << " sampled instances, " << elapsed
     << " s";
  return finish(f, os.str());
}

// 6. Couplings with prescribed marginals.
MatrixQ randomJoint(Draw& draw, Eigen::Index rows, Eigen::Index cols) {
  MatrixQ m(rows, cols);
  for (auto& x : m.reshaped()) x = Rational(draw.between(0, 3) == 0 ? 0 : draw.between(1, 9));
  if (m.sum() == 0) m(0, 0) = 1;
  return m / m.sum();
}

std::vector<std::string> labels(Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
  return out;
}

Outcome marginals() {
  Failures f;
  MatrixQ tri(2, 2);
  tri << Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(0);
  const ProductSpace triangle = ProductSpace::make({"1", "2"}, {"1", "2"}, tri);
  const MarginalPair half = MarginalPair::make(testing_support::vec({"1/2", "1/2"}), testing_support::vec({"1/2", "1/2"}));
  const CouplingResult t = coupleWithMarginals(triangle, half);
  f.note(!t.feasible && t.certificate.verify(), "triangle not certified infeasible");
  f.note(!findESM(buildMarginalCone(triangle, half)).equivalent, "triangle ESM exists");

  Draw draw(6006);
  auto agree = [&](const ProductSpace& ps, const MarginalPair& m) {
    const CouplingResult r = coupleWithMarginals(ps, m);
    f.note(r.certificate.verify(), "coupling certificate rejected");
    f.note(r.feasible == findESM(buildMarginalCone(ps, m)).equivalent, "coupling and ESM disagree");
    return r;
  };
  for (int i = 0; i < kFeasibleCouplings; ++i) {
    const Eigen::Index rows = draw.between(1, 4);
    const Eigen::Index cols = draw.between(1, 4);
    const ProductSpace ps = ProductSpace::make(labels(rows), labels(cols), randomJoint(draw, rows, cols));
    // Marginals of a random measure equivalent to P0 are always attainable.
    VectorQ w(static_cast<Eigen::Index>(ps.space()->size()));
    for (auto& x : w) x = Rational(draw.between(1, 9));
    const MarginalPair m = marginalsOf(ps, Measure(ps.space(), w / w.sum()));
    const CouplingResult r = agree(ps, m);
    if (!r.feasible) {
      f.note(false, "feasible instance reported infeasible");
      continue;
    }
    const MarginalPair got = marginalsOf(ps, *r.coupling);
    f.note(got.first == m.first && got.second == m.second, "coupling marginals differ");
    f.note(r.coupling->support() == ps.space()->reference().support(), "coupling support differs from P0");
  }
  int infeasible = 0;
  for (int i = 0; i < kRandomCouplings; ++i) {
    const Eigen::Index rows = draw.between(1, 4);
    const Eigen::Index cols = draw.between(1, 4);
    const ProductSpace ps = ProductSpace::make(labels(rows), labels(cols), randomJoint(draw, rows, cols));
    const MarginalPair m =
        MarginalPair::make(testing_support::toVector(testing_support::randomWeights(draw, static_cast<std::size_t>(rows), 5)),
                           testing_support::toVector(testing_support::randomWeights(draw, static_cast<std::size_t>(cols), 5)));
    infeasible += !agree(ps, m).feasible;
  }
  return finish(f, "triangle certified; " + std::to_string(kFeasibleCouplings) + " feasible couplings exact; " +
                       std::to_string(kRandomCouplings) + " random instances agree (" + std::to_string(infeasible) +
                       " infeasible)");
}

// 7. Casebook, with an independent floating-point oracle for the Poisson example.
struct PoissonOracle {
  std::vector<double> p;  // truncated, renormalized Poisson(1) on 0..N

  explicit PoissonOracle(std::size_t N) {
    double term = 1, total = 0;
    for (std::size_t j = 0; j <= N; ++j) {
      if (j > 0) term /= static_cast<double>(j);
      p.push_back(term);
      total += term;
    }
    for (auto& x : p) x /= total;
  }
};

bool approxInequalityHolds(double eps, std::size_t N, std::size_t n, std::uint64_t seed, int samples) {
  const PoissonOracle po(N);
  const double pB = 1 - po.p[0] * po.p[0];
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-3, 3);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> b(n + 1);
    for (auto& x : b) x = coef(rng);
    double eq = 0, supMinus = -1e300;
    for (std::size_t y = 0; y <= N; ++y)
      for (std::size_t z = 0; z <= N; ++z) {
        double x = b[0] * ((y == 0) - (z == 0));
        for (std::size_t j = 1; j <= n; ++j) x += b[j] * ((y == j) - po.p[j] * (z > 0));
        const double p0 = po.p[y] * po.p[z];
        const bool inB = y > 0 || z > 0;
        const double q = (inB ? eps * p0 / pB : p0 / (1 - pB)) / (eps + 1);
        eq += q * x;
        supMinus = std::max(supMinus, -x);
      }
    if (eq > eps * supMinus + kInequalitySlack) return false;
  }
  return true;
}

Outcome casebook() {
  Failures f;
  const CaseReport approx = caseApproxESFA(Rational(1, 10), 8, 4, 1, kApproxSamples);
  for (const char* label : {"inequality", "no_equivalent_esm", "support_inside_z0", "least_constant_b"})
    f.note(approx.find(label) && approx.find(label)->status == ClaimStatus::Verified,
           std::string("approx-esfa ") + label + " not verified");
  const double limit = std::exp(-1.0) / (1.0 - std::exp(-2.0));
  const PoissonOracle po(8);
  const double truncated = po.p[0] / (1 - po.p[0] * po.p[0]);
  const Claim* ratio = approx.find("ratio");
  double reported = 0;
  if (ratio && ratio->value.size() > 1 && ratio->value.front() == '~') reported = std::stod(ratio->value.substr(1));
  f.note(std::fabs(reported - truncated) <= kTruncatedRatioTolerance, "reported ratio differs from the oracle");
  f.note(std::fabs(reported - limit) <= kRatioTolerance, "ratio not within 1e-3 of the limit");
  f.note(approxInequalityHolds(0.1, 8, 4, 77, kApproxSamples), "floating oracle inequality fails");

  for (int seed = 1; seed <= kRokhlinSeeds; ++seed) {
    const auto d = static_cast<std::size_t>(1 + seed % 4);
    const CaseReport r = caseRokhlinSchachermayer(static_cast<std::uint64_t>(seed), d, 6, seed % 5 == 0);
    for (const char* label : {"g_dominates_f", "g_orthogonal", "g_integrable"})
      f.note(r.find(label) && r.find(label)->status == ClaimStatus::Verified,
             "rokhlin-schachermayer seed " + std::to_string(seed) + " " + label);
  }

  const CaseReport signs = caseSignSequences(10, std::nullopt, 1, 100);
  for (const char* label : {"ess_sup_identity", "least_constant_b"})
    f.note(signs.find(label) && signs.find(label)->status == ClaimStatus::Verified,
           std::string("sign-sequences ") + label + " not verified");
  const std::string kb = signs.find("least_constant_b") ? signs.find("least_constant_b")->value : "?";

  std::ostringstream os;
  os.precision(12);
  os << "ratio " << reported << " vs limit " << limit << "; " << kRokhlinSeeds
     << " rokhlin-schachermayer seeds; sign-sequences n=10 minKB " << kb;
  return finish(f, os.str());
}

// 8. Byte-identical CLI reports across runs.
struct Captured {
  std::string out;
  int status = -1;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe);
  return c;
}

Outcome determinism(const std::string& cli) {
  Failures f;
  const std::string data = FTAP_TEST_DATA_DIR;
  const std::vector<std::string> commands{
      "check " + data + "/i1_cone.json",
      "check " + data + "/arbitrage.json",
      "esm " + data + "/i1_linear.json",
      "esm " + data + "/product_triangle.json",
      "couple " + data + "/product_uniform.json",
      "couple " + data + "/product_triangle.json",
      "case finite-ftap --seed 7",
      "case sign-sequences --n 8",
      "case approx-esfa --eps 1/10 --N 8 --n 4",
      "case nflvr-gap --M 6 --n 2",
      "case rokhlin-schachermayer --seed 3 --d 3",
  };
  for (const auto& args : commands) {
    const std::string command = "\"" + cli + "\" " + args;
    const Captured a = capture(command);
    const Captured b = capture(command);
    f.note(!a.out.empty() && a.status != -1, "could not run: " + args);
    f.note(a.out == b.out && a.status == b.status, "output differs: " + args);
  }
  return finish(f, std::to_string(commands.size()) + " commands run twice, identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: ftap_acceptance <path to ftap cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"equivalence suite", equivalenceSuite},
      {"band reproduction", bandReproduction},
      {"density identity", densityIdentity},
      {"constant conversions", conversions},
      {"vertex-enumeration oracle", oracleComparison},
      {"marginals", marginals},
      {"casebook", casebook},
      {"determinism", [&] { return determinism(cli); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
