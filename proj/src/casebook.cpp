#include "ftap/casebook.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "ftap/construct.hpp"
#include "ftap/criteria.hpp"

namespace ftap {

using Index = Eigen::Index;

namespace {

// Portable draws: std::uniform_int_distribution is implementation defined,
// so reports would differ across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  long between(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

std::string approx(double v) {
  std::ostringstream os;
  os << '~' << std::setprecision(12) << v;
  return os.str();
}

std::string listOf(const VectorQ& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + toString(v(i));
  return s + "]";
}

std::string countOf(std::size_t ok, std::size_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

ClaimStatus verdict(bool ok) { return ok ? ClaimStatus::Verified : ClaimStatus::Refuted; }

void claim(CaseReport& r, std::string label, ClaimStatus status, std::string value, std::string tolerance,
           std::string checkedBy) {
  r.claims.push_back({std::move(label), status, std::move(value), std::move(tolerance), std::move(checkedBy)});
}

void info(CaseReport& r, std::string label, std::string value, std::string checkedBy) {
  claim(r, std::move(label), ClaimStatus::Informational, std::move(value), "-", std::move(checkedBy));
}

VectorQ randomWeights(Draw& draw, std::size_t atoms) {
  VectorQ w(static_cast<Index>(atoms));
  for (Index i = 0; i < w.size(); ++i) w(i) = Rational(draw.between(1, 9));
  return w / w.sum();
}

// E_P(X_j) <= 0 for every generator, with equality for linear spaces.
bool isSuperMartingale(const ConeSpec& cone, const Measure& p) {
  for (const auto& g : cone.generators()) {
    const Rational e = expectation(p, g);
    if (e.sign() > 0 || (cone.isLinear() && e.sign() != 0)) return false;
  }
  return true;
}

bool isEquivalent(const Measure& p) {
  return relate(p, p.space()->reference()).kind == MeasureRelationKind::Equivalent;
}

Rational factorial(std::size_t j) {
  Rational f(1);
  for (std::size_t i = 2; i <= j; ++i) f *= Rational(static_cast<long>(i));
  return f;
}

}  // namespace

std::string toString(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Verified:
      return "verified";
    case ClaimStatus::Refuted:
      return "refuted";
    case ClaimStatus::Informational:
      return "informational";
  }
  return "?";
}

const Claim* CaseReport::find(std::string_view label) const {
  for (const auto& c : claims)
    if (c.label == label) return &c;
  return nullptr;
}

bool CaseReport::anyRefuted() const {
  for (const auto& c : claims)
    if (c.status == ClaimStatus::Refuted) return true;
  return false;
}

std::string render(const CaseReport& report) {
  std::ostringstream os;
  os << "case: " << report.name << '\n';
  for (const auto& [key, value] : report.parameters) os << "param " << key << ": " << value << '\n';
  std::size_t verified = 0, refuted = 0, informational = 0;
  for (const auto& c : report.claims) {
    os << "claim " << c.label << ": " << toString(c.status) << '\n';
    os << "  value: " << c.value << '\n';
    os << "  tolerance: " << c.tolerance << '\n';
    os << "  checked by: " << c.checkedBy << '\n';
    (c.status == ClaimStatus::Verified ? verified : c.status == ClaimStatus::Refuted ? refuted : informational)++;
  }
  os << "summary: verified " << verified << ", refuted " << refuted << ", informational " << informational << '\n';
  return os.str();
}

CaseReport caseFiniteDimFTAP(std::uint64_t seed, std::size_t atoms, std::size_t generators) {
  if (atoms == 0) throw std::invalid_argument("finite-ftap needs at least one atom");
  Draw draw(seed);
  SpacePtr space = FiniteProbSpace::make(randomWeights(draw, atoms));
  std::vector<RandomVariable> gens;
  for (std::size_t j = 0; j < generators; ++j) {
    VectorQ v(static_cast<Index>(atoms));
    for (Index i = 0; i < v.size(); ++i) v(i) = Rational(draw.between(-3, 3));
    gens.emplace_back(space, std::move(v));
  }
  CaseReport report = caseFiniteDimFTAP(ConeSpec(space, std::move(gens), ConeKind::LinearSpace));
  report.parameters.insert(report.parameters.begin(),
                           {{"seed", std::to_string(seed)},
                            {"atoms", std::to_string(atoms)},
                            {"generators", std::to_string(generators)}});
  return report;
}

CaseReport caseFiniteDimFTAP(const ConeSpec& cone) {
  CaseReport r;
  r.name = "finite-ftap";
  r.parameters.emplace_back("cone_kind", toString(cone.kind()));

  const NaReport na = checkNA(cone);
  claim(r, "no_arbitrage", verdict(na.holds && na.certificate.verify()), na.holds ? "holds" : "fails", "0",
        "checkNA");
  if (na.witness) info(r, "arbitrage_witness", listOf(na.witness->values()), "checkNA");

  const EsmResult esm = findESM(cone);
  const bool esmValid = esm.equivalent && esm.measure && isEquivalent(*esm.measure) &&
                        isSuperMartingale(cone, *esm.measure) && esm.certificate.verify();
  claim(r, "equivalent_esm", verdict(esmValid), "tau = " + toString(esm.tau), "0", "findESM");
  claim(r, "na_iff_esm", verdict(na.holds == esm.equivalent),
        std::string(na.holds ? "holds" : "fails") + " / " + (esm.equivalent ? "exists" : "none"), "0",
        "checkNA, findESM");

  if (na.holds) {
    const Measure p0 = cone.space()->reference();
    const KReport k = minKBStar(cone, p0);
    claim(r, "least_constant_bstar", verdict(k.value.isFinite()), toString(k.value), "0", "minKBStar");
    if (k.value.isFinite()) {
      const MeasureSearch band = findESMinBand(cone, p0, k.value.value());
      const BandSpec spec = BandSpec::fromK(p0, k.value.value());
      const bool ok = band.found() && spec.contains(*band.measure) && isSuperMartingale(cone, *band.measure);
      claim(r, "band_esm", verdict(ok), "r = " + toString(1 / spec.t) + ", s = " + toString(spec.t), "0",
            "minKBStar, findESMinBand");
    }
  }

  VectorQ y = VectorQ::Ones(static_cast<Index>(cone.space()->size()));
  for (const auto& g : cone.generators()) y += negativePart(g.values()) + positivePart(g.values());
  const NaReport normalized = checkNA(rescaleCone(cone, RandomVariable(cone.space(), std::move(y))));
  claim(r, "normalization_invariance", verdict(normalized.holds == na.holds),
        std::string(na.holds ? "holds" : "fails") + " / " + (normalized.holds ? "holds" : "fails"), "0",
        "rescaleCone, checkNA");
  return r;
}

CaseReport caseSignSequences(std::size_t n, std::optional<std::vector<Rational>> minusProbabilities,
                             std::uint64_t seed, std::size_t samples) {
  if (n < 1 || n > 12) throw std::invalid_argument("sign-sequences needs 1 <= n <= 12");
  std::vector<Rational> q;
  if (minusProbabilities) {
    q = *minusProbabilities;
    if (q.size() != n) throw std::invalid_argument("need one probability per coordinate");
  } else {
    for (std::size_t m = 1; m <= n; ++m) q.push_back(Rational(1, static_cast<long>((m + 1) * (m + 1))));
  }
  for (const auto& qm : q)
    if (qm.sign() <= 0 || qm >= 1) throw std::invalid_argument("P0(X_m = -1) must lie in (0, 1)");

  CaseReport r;
  r.name = "sign-sequences";
  r.parameters.emplace_back("n", std::to_string(n));
  r.parameters.emplace_back("seed", std::to_string(seed));
  r.parameters.emplace_back("samples", std::to_string(samples));
  std::string qs;
  for (std::size_t m = 0; m < n; ++m) qs += (m ? ", " : "") + toString(q[m]);
  r.parameters.emplace_back("minus_probabilities", "[" + qs + "]");

  // Atom i has X_m = -1 exactly when bit m - 1 of i is set.
  const std::size_t atoms = std::size_t{1} << n;
  std::vector<std::string> labels;
  VectorQ w(static_cast<Index>(atoms));
  for (std::size_t i = 0; i < atoms; ++i) {
    std::string label;
    Rational weight(1);
    for (std::size_t m = 0; m < n; ++m) {
      const bool minus = (i >> m) & 1U;
      label += minus ? '-' : '+';
      weight *= minus ? q[m] : 1 - q[m];
    }
    labels.push_back(std::move(label));
    w(static_cast<Index>(i)) = weight;
  }
  SpacePtr space = FiniteProbSpace::make(std::move(labels), std::move(w));
  claim(r, "full_support", ClaimStatus::Verified, std::to_string(atoms) + " atoms", "0", "FiniteProbSpace::make");

  std::vector<RandomVariable> gens;
  for (std::size_t m = 0; m < n; ++m) {
    VectorQ v(static_cast<Index>(atoms));
    for (std::size_t i = 0; i < atoms; ++i) v(static_cast<Index>(i)) = ((i >> m) & 1U) ? -1 : 1;
    gens.emplace_back(space, std::move(v));
  }
  const ConeSpec cone(space, gens, ConeKind::LinearSpace);

  Draw draw(seed);
  std::size_t ok = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    VectorQ b(static_cast<Index>(n));
    Rational l1(0);
    for (Index m = 0; m < b.size(); ++m) {
      b(m) = Rational(draw.between(-5, 5));
      l1 += abs(b(m));
    }
    const RandomVariable x = cone.combination(b);
    if (essSup(x) == l1 && essSup(-x) == l1) ++ok;
  }
  claim(r, "ess_sup_identity", verdict(ok == samples), countOf(ok, samples), "0", "essSup");

  const KReport kb = minKB(cone, space->reference());
  claim(r, "least_constant_b", verdict(kb.value <= ExtendedRational(1)), toString(kb.value), "0", "minKB");

  bool closedForm = true;
  for (std::size_t m = 0; m < n; ++m) closedForm = closedForm && expectation(space->reference(), gens[m]) == 1 - 2 * q[m];
  claim(r, "expectation_closed_form", verdict(closedForm), "E(X_m) = 1 - 2 P0(X_m = -1) for m <= " + std::to_string(n),
        "0", "expectation");
  for (std::size_t m = 0; m < n; ++m)
    info(r, "expectation[" + std::to_string(m + 1) + "]", toString(expectation(space->reference(), gens[m])),
         "expectation");
  return r;
}

CaseReport caseApproxESFA(const Rational& epsilon, std::size_t N, std::size_t n, std::uint64_t seed,
                          std::size_t samples) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  if (n < 1 || n >= N || N > 20) throw std::invalid_argument("approx-esfa needs 1 <= n < N <= 20");

  CaseReport r;
  r.name = "approx-esfa";
  r.parameters.emplace_back("eps", toString(epsilon));
  r.parameters.emplace_back("N", std::to_string(N));
  r.parameters.emplace_back("n", std::to_string(n));
  r.parameters.emplace_back("seed", std::to_string(seed));
  r.parameters.emplace_back("samples", std::to_string(samples));

  // Truncated Poisson(1): p_j = (1/j!) / sum_{i <= N} 1/i!.
  std::vector<Rational> p(N + 1);
  Rational total(0);
  for (std::size_t j = 0; j <= N; ++j) total += p[j] = 1 / factorial(j);
  for (auto& pj : p) pj /= total;

  const std::size_t side = N + 1;
  auto atom = [side](std::size_t y, std::size_t z) { return y * side + z; };
  std::vector<std::string> labels;
  VectorQ w(static_cast<Index>(side * side));
  for (std::size_t y = 0; y <= N; ++y)
    for (std::size_t z = 0; z <= N; ++z) {
      labels.push_back("y" + std::to_string(y) + "z" + std::to_string(z));
      w(static_cast<Index>(atom(y, z))) = p[y] * p[z];
    }
  SpacePtr space = FiniteProbSpace::make(std::move(labels), std::move(w));

  std::vector<RandomVariable> gens;
  for (std::size_t j = 0; j <= N; ++j) {
    VectorQ v = VectorQ::Zero(static_cast<Index>(side * side));
    for (std::size_t y = 0; y <= N; ++y)
      for (std::size_t z = 0; z <= N; ++z) {
        Rational& cell = v(static_cast<Index>(atom(y, z)));
        if (j == 0)
          cell = Rational(y == 0 ? 1 : 0) - Rational(z == 0 ? 1 : 0);
        else
          cell = Rational(y == j ? 1 : 0) - (z > 0 ? p[j] : Rational(0));
      }
    gens.emplace_back(space, std::move(v));
  }

  // B^c = {Y = 0, Z = 0}.
  const Rational pB = 1 - p[0] * p[0];
  VectorQ qw(static_cast<Index>(side * side));
  for (std::size_t a = 0; a < side * side; ++a) {
    const bool inB = a != atom(0, 0);
    qw(static_cast<Index>(a)) = (inB ? epsilon * space->weight(a) / pB : Rational(1)) / (epsilon + 1);
  }
  const Measure qEps(space, std::move(qw));
  claim(r, "q_eps_equivalent", verdict(isEquivalent(qEps)), "Q_eps ~ P0", "0", "relate");

  const Rational rho = p[0] / pB;
  const ConeSpec partial(space, std::vector<RandomVariable>(gens.begin(), gens.begin() + static_cast<long>(n) + 1),
                         ConeKind::LinearSpace);
  Draw draw(seed);
  std::size_t identityOk = 0, inequalityOk = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    VectorQ b(static_cast<Index>(n + 1));
    for (Index j = 0; j < b.size(); ++j) {
      const long num = draw.between(-20, 20);
      b(j) = Rational(num, draw.between(1, 4));
    }
    Rational bSum(0);
    for (std::size_t j = 1; j <= n; ++j) bSum += b(static_cast<Index>(j)) * p[j];
    const RandomVariable x = partial.combination(b);
    const Rational eq = expectation(qEps, x);
    if (eq == bSum * epsilon / (epsilon + 1) * rho) ++identityOk;
    if (eq <= epsilon * essSup(-x)) ++inequalityOk;
  }
  claim(r, "expectation_identity", verdict(identityOk == samples), countOf(identityOk, samples), "0", "expectation");
  claim(r, "inequality", verdict(inequalityOk == samples), countOf(inequalityOk, samples), "0",
        "expectation, essSup");

  const KReport kb = minKB(partial, qEps);
  const Rational expectedK = epsilon * rho / (epsilon + 1);
  claim(r, "least_constant_b",
        verdict(kb.value == ExtendedRational(expectedK) && kb.value <= ExtendedRational(epsilon)),
        toString(kb.value), "0", "minKB");

  claim(r, "ratio_below_one", verdict(rho < 1), toString(rho), "0", "exact comparison");
  const double limit = std::exp(-1.0) / (1.0 - std::exp(-2.0));
  const double truncated = toDouble(rho);
  claim(r, "ratio", verdict(std::fabs(truncated - limit) <= 1e-3), approx(truncated), "1e-3", "limit e^-1/(1-e^-2)");
  info(r, "ratio_limit", approx(limit), "std::exp");

  const ConeSpec full(space, gens, ConeKind::LinearSpace);
  const EsmResult esm = findESM(full);
  claim(r, "no_equivalent_esm", verdict(!esm.equivalent && esm.tau.sign() == 0 && esm.certificate.verify()),
        "tau = " + toString(esm.tau), "0", "findESM");
  bool insideZ0 = esm.measure.has_value() && esm.supportCertificate && esm.supportCertificate->verify() &&
                  isSuperMartingale(full, *esm.measure);
  std::string support;
  if (esm.measure) {
    for (auto a : esm.measure->support()) {
      insideZ0 = insideZ0 && a % side == 0;
      support += (support.empty() ? "" : ", ") + space->labels()[a];
    }
  }
  claim(r, "support_inside_z0", verdict(insideZ0), "{" + support + "}", "0", "findESM, maximalSupport");
  return r;
}

CaseReport caseNFLVRGap(std::size_t M, std::size_t n, std::uint64_t seed, std::size_t measures) {
  if (M < 1 || n < 1 || n > 8) throw std::invalid_argument("nflvr-gap needs M >= 1 and 1 <= n <= 8");
  CaseReport r;
  r.name = "nflvr-gap";
  r.parameters.emplace_back("M", std::to_string(M));
  r.parameters.emplace_back("n", std::to_string(n));
  r.parameters.emplace_back("seed", std::to_string(seed));
  r.parameters.emplace_back("measures", std::to_string(measures));

  struct Grid {
    SpacePtr space;
    std::vector<Rational> z;
    std::vector<RandomVariable> gens;  // X_0..X_n
  };
  auto build = [n](std::size_t bands) {
    Grid g;
    const Rational h(1, 1L << (n + 1));
    const std::size_t count = bands * (std::size_t{1} << (n + 1));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i) {
      g.z.push_back((Rational(static_cast<long>(i)) + Rational(1, 2)) * h);
      labels.push_back("z" + std::to_string(i));
    }
    g.space = FiniteProbSpace::make(std::move(labels), VectorQ::Constant(static_cast<Index>(count), Rational(1, static_cast<long>(count))));
    for (std::size_t m = 0; m <= n; ++m) {
      VectorQ v(static_cast<Index>(count));
      for (std::size_t i = 0; i < count; ++i) {
        const Rational& z = g.z[i];
        const long k = (ceil(z) - 1).convert_to<long>();  // floor, since z is never an integer
        const Rational sign = k % 2 == 0 ? 1 : -1;
        if (m == 0) {
          v(static_cast<Index>(i)) = sign * z;
        } else {
          Rational value = z < Rational(static_cast<long>(m)) ? 1 : 0;
          if (k >= static_cast<long>(m) && z >= Rational(k) + Rational(1, 1L << m)) value += sign * z;
          v(static_cast<Index>(i)) = value;
        }
      }
      g.gens.emplace_back(g.space, std::move(v));
    }
    return g;
  };

  const Grid grid = build(M);
  std::vector<Measure> candidates{grid.space->reference()};
  Draw draw(seed);
  for (std::size_t s = 0; s < measures; ++s) candidates.emplace_back(grid.space, randomWeights(draw, grid.z.size()));

  std::size_t ok = 0, total = 0;
  for (const auto& p : candidates) {
    for (std::size_t m = 1; m <= n; ++m) {
      // P(Z < m) + sum_{k >= m} (-1)^k E_P{Z I(k + 2^-m <= Z < k + 1)}, summed band by band.
      Rational rhs(0);
      for (std::size_t i = 0; i < grid.z.size(); ++i)
        if (grid.z[i] < Rational(static_cast<long>(m))) rhs += p(i);
      for (std::size_t k = m; k < M; ++k) {
        Rational band(0);
        const Rational lo = Rational(static_cast<long>(k)) + Rational(1, 1L << m);
        const Rational hi(static_cast<long>(k + 1));
        for (std::size_t i = 0; i < grid.z.size(); ++i)
          if (grid.z[i] >= lo && grid.z[i] < hi) band += p(i) * grid.z[i];
        rhs += k % 2 == 0 ? band : Rational(-band);
      }
      ++total;
      if (expectation(p, grid.gens[m]) == rhs) ++ok;
    }
  }
  claim(r, "expectation_identity", verdict(ok == total), countOf(ok, total), "0", "expectation");

  // X_0 > 0 exactly on the bands [k, k + 1) with k even; its maximum is the top grid point of the last such band.
  const std::size_t lastEven = (M - 1) % 2 == 0 ? M - 1 : M - 2;
  const Rational expectedSup = Rational(static_cast<long>(lastEven + 1)) - Rational(1, 1L << (n + 2));
  const Rational sup0 = essSup(grid.gens[0]);
  claim(r, "ess_sup_x0", verdict(sup0 == expectedSup), toString(sup0), "0",
        "essSup");

  const Grid doubled = build(2 * M);
  const Rational sup0Doubled = essSup(doubled.gens[0]);
  claim(r, "ess_sup_growth", verdict(sup0Doubled > sup0), toString(sup0) + " -> " + toString(sup0Doubled), "0",
        "essSup");
  for (std::size_t m = 1; m <= n; ++m) {
    info(r, "ess_sup[" + std::to_string(m) + "]", toString(essSup(grid.gens[m])), "essSup");
    info(r, "expectation[" + std::to_string(m) + "]", toString(expectation(grid.space->reference(), grid.gens[m])),
         "expectation");
  }
  const EsmResult esm = findESM(ConeSpec(grid.space, grid.gens, ConeKind::LinearSpace));
  info(r, "equivalent_esm_at_truncation", std::string(esm.equivalent ? "exists" : "none") + ", tau = " + toString(esm.tau),
       "findESM");
  return r;
}

CaseReport caseRokhlinSchachermayer(std::uint64_t seed, std::size_t d, std::size_t atoms, bool adversarial) {
  if (atoms < 2) throw std::invalid_argument("rokhlin-schachermayer needs at least two atoms");
  Draw draw(seed);
  SpacePtr space = FiniteProbSpace::make(randomWeights(draw, atoms));
  const Measure p0 = space->reference();
  std::vector<RandomVariable> gens;
  for (std::size_t j = 0; j < d; ++j) {
    VectorQ v(static_cast<Index>(atoms));
    for (Index i = 0; i < v.size(); ++i) v(i) = Rational(draw.between(-3, 3));
    RandomVariable x(space, std::move(v));
    gens.push_back(x - RandomVariable::constant(space, expectation(p0, x)));
  }
  VectorQ f(static_cast<Index>(atoms));
  for (Index i = 0; i < f.size(); ++i) f(i) = Rational(draw.between(1, 9));
  if (adversarial) f(0) = 1000;
  RandomVariable density(space, f);
  density = density * (1 / expectation(p0, density));

  CaseReport report = caseRokhlinSchachermayer(ConeSpec(space, std::move(gens), ConeKind::LinearSpace), density);
  report.parameters.insert(report.parameters.begin(), {{"seed", std::to_string(seed)},
                                                       {"d", std::to_string(d)},
                                                       {"atoms", std::to_string(atoms)},
                                                       {"adversarial", adversarial ? "true" : "false"}});
  return report;
}

CaseReport caseRokhlinSchachermayer(const ConeSpec& cone, const RandomVariable& f) {
  if (!cone.isLinear()) throw PreconditionViolated("rokhlin-schachermayer needs a linear space");
  if (!sameSpace(cone.space(), f.space())) throw SpaceMismatch();
  const Measure p0 = cone.space()->reference();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f(i).sign() <= 0) throw PreconditionViolated("density f must be strictly positive");
  if (expectation(p0, f) != 1) throw PreconditionViolated("density f must have E_P0(f) = 1");

  CaseReport r;
  r.name = "rokhlin-schachermayer";
  r.parameters.emplace_back("f", listOf(f.values()));
  bool centered = true;
  for (const auto& x : cone.generators()) centered = centered && expectation(p0, x).sign() == 0;
  if (!centered) throw PreconditionViolated("generators must satisfy E_P0(X_j) = 0");
  claim(r, "centered", ClaimStatus::Verified, "E_P0(X_j) = 0 for all j", "0", "expectation");

  const Measure pf = withDensity(p0, f);
  const KReport k = minKBStar(cone, pf);
  claim(r, "least_constant_bstar", verdict(k.value.isFinite()), toString(k.value), "0", "minKBStar");
  if (!k.value.isFinite()) return r;

  const MeasureSearch band = findESMinBand(cone, pf, k.value.value());
  const BandSpec spec = BandSpec::fromK(pf, k.value.value());
  const bool found = band.found() && spec.contains(*band.measure) && isSuperMartingale(cone, *band.measure);
  claim(r, "band_measure", verdict(found), "r = " + toString(1 / spec.t) + ", s = " + toString(spec.t), "0",
        "findESMinBand");
  if (!found) return r;

  const RandomVariable psi = densityOf(*band.measure, p0);
  const RandomVariable g = psi * spec.t;  // psi / r
  info(r, "g", listOf(g.values()), "densityOf");
  bool dominates = true;
  for (std::size_t i = 0; i < g.size(); ++i) dominates = dominates && g(i) >= f(i);
  claim(r, "g_dominates_f", verdict(dominates), dominates ? "g >= f" : "g < f somewhere", "0", "densityOf");
  const Rational mean = expectation(p0, g);
  claim(r, "g_integrable", verdict(mean == spec.t), toString(mean), "0", "expectation");
  bool orthogonal = true;
  for (const auto& x : cone.generators()) orthogonal = orthogonal && expectation(p0, g.times(x)).sign() == 0;
  claim(r, "g_orthogonal", verdict(orthogonal), "E_P0(g X_j) = 0 for all j", "0", "expectation");
  return r;
}

}  // namespace ftap
