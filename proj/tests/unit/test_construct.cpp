#include "doctest.h"
#include "ftap/construct.hpp"
#include "ftap/criteria.hpp"
#include "support/instances.hpp"
#include "support/oracle.hpp"

using namespace ftap;
using testing_support::space;
using testing_support::vec;

namespace {

struct I1 {
  SpacePtr s = space({"3/5", "2/5"});
  RandomVariable x{s, vec({"1", "-1"})};
  ConeSpec cone{s, {x}, ConeKind::ConvexCone};
  ConeSpec arbitrage{s, {RandomVariable(s, vec({"1", "0"}))}, ConeKind::ConvexCone};
  ConeSpec empty{s, {}, ConeKind::ConvexCone};
  Measure p0 = s->reference();
};

bool isSupermartingale(const ConeSpec& cone, const Measure& p) {
  for (const auto& g : cone.generators()) {
    const Rational e = expectation(p, g);
    if (cone.kind() == ConeKind::LinearSpace ? e != 0 : e > 0) return false;
  }
  return true;
}

RandomVariable randomVariable(testing_support::Draw& draw, const SpacePtr& s, long lo, long hi) {
  VectorQ v(static_cast<Eigen::Index>(s->size()));
  for (auto& x : v) x = Rational(draw.between(lo, hi));
  return RandomVariable(s, v);
}

}  // namespace

TEST_CASE("singleXDensity examples") {
  I1 i1;
  const SingleXDensity d = singleXDensity(i1.p0, i1.x, Rational(1, 2));
  CHECK(d.t == Rational(3, 2));
  CHECK(d.normalizer == Rational(6, 5));
  CHECK(d.density.values() == vec({"5/6", "5/4"}));
  CHECK(d.measure.weights() == vec({"1/2", "1/2"}));
  CHECK(expectation(d.measure, i1.x) == 0);

  CHECK(singleXDensity(i1.p0, i1.x, 1).measure != i1.p0);
  CHECK(singleXDensity(i1.p0, RandomVariable(i1.s, vec({"0", "0"})), 0).measure == i1.p0);
  const SpacePtr s = space({"1/2", "1/2"});
  CHECK(singleXDensity(s->reference(), RandomVariable(s, vec({"-1", "1"})), 0).measure == s->reference());
  CHECK_THROWS_AS(singleXDensity(i1.p0, i1.x, Rational(1, 3)), PreconditionViolated);
  CHECK_THROWS_AS(singleXDensity(i1.p0, i1.x, -1), PreconditionViolated);
}

TEST_CASE("singleXDensity identity on random triples") {
  testing_support::Draw draw(17);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = static_cast<std::size_t>(draw.between(1, 6));
    const SpacePtr s = FiniteProbSpace::make(testing_support::toVector(testing_support::randomWeights(draw, n)));
    const Measure q(s, testing_support::toVector(testing_support::randomWeights(draw, n)));
    const RandomVariable x = randomVariable(draw, s, -4, 4);
    const Rational eq = expectation(q, x);
    const Rational eMinus = expectation(q, valueDecomp(x).second);
    Rational k(draw.between(0, 4), draw.between(1, 3));
    if (eq > k * eMinus) {
      if (eMinus == 0) continue;
      k = eq / eMinus + Rational(draw.between(0, 2), 5);
    }
    const SingleXDensity d = singleXDensity(q, x, k);
    CHECK(expectation(d.measure, x) * d.normalizer == eq - k * eMinus);
    CHECK(expectation(d.measure, x) <= 0);
    CHECK(BandSpec::fromK(q, k).contains(d.measure));
  }
}

TEST_CASE("findESMinBand examples") {
  I1 i1;
  const MeasureSearch band = findESMinBand(i1.cone, i1.p0, Rational(1, 2));
  REQUIRE(band.found());
  CHECK((*band.measure)(0) >= Rational(2, 5));
  CHECK((*band.measure)(0) <= Rational(1, 2));
  CHECK(band.certificate.verify());

  CHECK(findESMinBand(i1.empty, i1.p0, 0).measure == i1.p0);

  const MeasureSearch none = findESMinBand(i1.arbitrage, i1.p0, 5);
  CHECK_FALSE(none.found());
  CHECK(none.certificate.outcome.status == LpStatus::Infeasible);
  CHECK(none.certificate.verify());
}

TEST_CASE("findESM examples") {
  I1 i1;
  const EsmResult esm = findESM(i1.cone);
  REQUIRE(esm.equivalent);
  CHECK(esm.measure->weights() == vec({"1/2", "1/2"}));
  CHECK(esm.tau == Rational(5, 6));
  CHECK(esm.certificate.verify());

  const EsmResult none = findESM(i1.arbitrage);
  CHECK_FALSE(none.equivalent);
  CHECK(none.tau == 0);
  REQUIRE(none.measure);
  CHECK(none.measure->weights() == vec({"0", "1"}));
  CHECK(none.certificate.verify());
  REQUIRE(none.supportCertificate);
  CHECK(none.supportCertificate->verify());

  // X = (1, 1) charges every atom: no super-martingale probability at all.
  const EsmResult infeasible = findESM(ConeSpec(i1.s, {RandomVariable(i1.s, vec({"1", "1"}))}, ConeKind::ConvexCone));
  CHECK_FALSE(infeasible.equivalent);
  CHECK_FALSE(infeasible.measure);
  CHECK(infeasible.certificate.outcome.status == LpStatus::Infeasible);
  CHECK(infeasible.certificate.verify());
}

TEST_CASE("findESFAwithFloor examples") {
  I1 i1;
  const MeasureSearch half = findESFAwithFloor(i1.cone, Rational(1, 2));
  REQUIRE(half.found());
  CHECK(isSupermartingale(i1.cone, *half.measure));
  for (std::size_t w = 0; w < 2; ++w) CHECK((*half.measure)(w) >= i1.s->weight(w) / 2);

  const MeasureSearch one = findESFAwithFloor(i1.cone, 1);
  CHECK_FALSE(one.found());
  CHECK(one.certificate.verify());

  CHECK(findESFAwithFloor(i1.empty, 1).measure == i1.p0);
}

TEST_CASE("rescale, deflate and inflate examples") {
  I1 i1;
  const RandomVariable one = RandomVariable::constant(i1.s, 1);
  CHECK(rescaleCone(i1.cone, one).generators().front() == i1.x);
  const RandomVariable y(i1.s, vec({"1", "2"}));
  const ConeSpec scaled = rescaleCone(i1.cone, y);
  CHECK(scaled.generators().front().values() == vec({"1", "-1/2"}));
  CHECK(scaled.kind() == ConeKind::ConvexCone);
  const RandomVariable y2(i1.s, vec({"3", "5/4"}));
  CHECK(rescaleCone(rescaleCone(i1.cone, y), y2).generators().front() ==
        rescaleCone(i1.cone, y.times(y2)).generators().front());
  CHECK_THROWS_AS(rescaleCone(i1.cone, RandomVariable(i1.s, vec({"1/2", "1"}))), PreconditionViolated);

  const SpacePtr s = space({"1/2", "1/2"});
  const Measure t(s, vec({"1/2", "1/2"}));
  const RandomVariable y13(s, vec({"1", "3"}));
  CHECK(deflateMeasure(t, RandomVariable::constant(s, 1)) == t);
  const Measure p = deflateMeasure(t, y13);
  CHECK(p.weights() == vec({"3/4", "1/4"}));
  CHECK(inflateMeasure(p, y13) == t);
  CHECK(inflateMeasure(p, RandomVariable::constant(s, 1)) == p);
  CHECK(deflateMeasure(inflateMeasure(p, y13), y13) == p);
  CHECK_THROWS_AS(deflateMeasure(t, RandomVariable(s, vec({"0", "3"}))), PreconditionViolated);
}

TEST_CASE("deflation carries the super-martingale property back") {
  testing_support::Draw draw(23);
  int checked = 0;
  for (int round = 0; round < 100; ++round) {
    const auto inst = testing_support::randomInstance(draw, static_cast<std::size_t>(draw.between(2, 5)),
                                                      static_cast<std::size_t>(draw.between(1, 3)), 3, draw.coin());
    const ConeSpec cone = testing_support::toCone(inst);
    VectorQ yv(static_cast<Eigen::Index>(inst.atoms()));
    for (auto& v : yv) v = Rational(draw.between(2, 12), 2);
    const RandomVariable y(cone.space(), yv);
    const ConeSpec star = rescaleCone(cone, y);
    const EsmResult esm = findESM(star);
    if (!esm.measure) continue;
    CHECK(isSupermartingale(star, *esm.measure));
    CHECK(isSupermartingale(cone, deflateMeasure(*esm.measure, y)));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("dominatingVariable examples") {
  I1 i1;
  const DominatingVariable zero = dominatingVariable(i1.s, {RandomVariable(i1.s, vec({"0", "0"}))});
  CHECK(zero.y.values() == vec({"1", "1"}));
  CHECK(zero.thresholds == std::vector<Rational>{Rational(1)});

  const DominatingVariable d = dominatingVariable(i1.s, {RandomVariable(i1.s, vec({"4", "0"}))});
  CHECK(d.thresholds == std::vector<Rational>{Rational(4)});
  CHECK(d.y.values() == vec({"3/2", "1"}));
  CHECK(Rational(4) <= 2 * 4 * d.y(0));
  CHECK(Rational(0) <= 2 * 4 * d.y(1));
  CHECK_THROWS_AS(dominatingVariable(i1.s, {RandomVariable(i1.s, vec({"-1", "0"}))}), PreconditionViolated);
}

TEST_CASE("dominatingVariable dominates every input") {
  testing_support::Draw draw(29);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = static_cast<std::size_t>(draw.between(1, 6));
    const SpacePtr s = FiniteProbSpace::make(testing_support::toVector(testing_support::randomWeights(draw, n)));
    std::vector<RandomVariable> ys;
    const long count = draw.between(1, 5);
    for (long i = 0; i < count; ++i) ys.push_back(randomVariable(draw, s, 0, 9));
    const DominatingVariable d = dominatingVariable(s, ys);
    REQUIRE(d.thresholds.size() == ys.size());
    Rational bound(1, 2);
    for (std::size_t i = 0; i < ys.size(); ++i, bound /= 2) {
      const Rational& a = d.thresholds[i];
      CHECK(a > 0);
      Rational above(0);
      for (std::size_t w = 0; w < n; ++w)
        if (ys[i](w) > a) above += s->weight(w);
      CHECK(above < bound);
      for (std::size_t w = 0; w < n; ++w) CHECK(ys[i](w) <= a * d.y(w) / bound);
    }
    for (std::size_t w = 0; w < n; ++w) CHECK(d.y(w) >= 1);
  }
}

TEST_CASE("band construction and its converse on random instances") {
  testing_support::Draw draw(37);
  int finite = 0;
  for (int round = 0; round < 120; ++round) {
    const auto inst = testing_support::randomInstance(draw, static_cast<std::size_t>(draw.between(2, 6)),
                                                      static_cast<std::size_t>(draw.between(1, 4)), 3, draw.coin());
    const ConeSpec cone = testing_support::toCone(inst);
    const Measure q(cone.space(), testing_support::toVector(testing_support::randomWeights(draw, inst.atoms())));
    const KReport k = minKBStar(cone, q);
    const MeasureSearch band = k.value.isInfinite() ? MeasureSearch{} : findESMinBand(cone, q, k.value.value());
    if (k.value.isInfinite()) {
      CHECK_FALSE(findESM(cone).equivalent);
      continue;
    }
    ++finite;
    REQUIRE(band.found());
    CHECK(band.certificate.verify());
    CHECK(isSupermartingale(cone, *band.measure));
    CHECK(BandSpec::fromK(q, k.value.value()).contains(*band.measure));

    // Converse: an ESM with r P0 <= P <= s P0 gives E_P0(X) <= (s/r) E_P0(X^-).
    const auto [r, s] = densityBounds(*band.measure);
    const Measure p0 = cone.space()->reference();
    for (const auto& g : cone.generators())
      CHECK(expectation(p0, g) <= s / r * expectation(p0, valueDecomp(g).second));
    CHECK(minKBStar(cone, p0).value <= ExtendedRational(s / r));
  }
  CHECK(finite > 30);
}

TEST_CASE("findESM matches the oracle and the support is maximal") {
  testing_support::Draw draw(41);
  for (int round = 0; round < 150; ++round) {
    const auto inst = testing_support::randomInstance(draw, static_cast<std::size_t>(draw.between(1, 5)),
                                                      static_cast<std::size_t>(draw.between(0, 4)), 3, draw.coin());
    const ConeSpec cone = testing_support::toCone(inst);
    const EsmResult esm = findESM(cone);
    CHECK(esm.certificate.verify());
    const auto tau = oracle::esmTau(inst);
    CHECK(esm.tau == (tau ? *tau : Rational(0)));
    CHECK(esm.equivalent == (tau && *tau > 0));
    if (esm.measure) CHECK(isSupermartingale(cone, *esm.measure));

    const MaximalSupport ms = maximalSupport(cone);
    const std::vector<bool> charged = oracle::maximalSupport(inst);
    AtomSet expected;
    for (std::size_t w = 0; w < charged.size(); ++w)
      if (charged[w]) expected.push_back(w);
    CHECK(ms.atoms == expected);
    if (!esm.equivalent && esm.measure) CHECK(esm.measure->support() == expected);
  }
}

TEST_CASE("an ESM splits into Q and a recovered component") {
  I1 i1;
  const Measure p = *findESM(i1.cone).measure;
  for (const Rational& k : {Rational(1, 2), Rational(1), Rational(4)}) {
    const Measure p1 = mixtureComponent(p, i1.p0, k);
    CHECK(mixture(i1.p0, p1, k) == p);
  }
}
