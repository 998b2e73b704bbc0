#include <gtest/gtest.h>

#include <cmath>

#include "fhardy/verifier.hpp"

using namespace fhardy;

namespace {

TestFunction tent(std::string id = "tent") {
  TestFunction t;
  t.id = std::move(id);
  return t;
}

Scenario base(Theorem th, int dim = 1) {
  Scenario sc;
  sc.theorem = th;
  sc.seed = 1;
  sc.group = GroupSpec::euclidean(dim);
  sc.norm = NormKind::euclidean;
  sc.p = 2.0;
  sc.q = 2.0;
  sc.s = 0.75;
  sc.weights.a = PowerExpr::constant(1.0);
  sc.weights.v = PowerExpr::constant(1.0);
  sc.weights.z = PowerExpr::constant(1.0);
  sc.corpus = {tent()};
  return sc;
}

const GateResult* find_gate(const VerificationReport& r, const std::string& name) {
  for (const auto& g : r.gates)
    if (g.name == name) return &g;
  return nullptr;
}

}  // namespace

TEST(Record, VerdictBoundaries) {
  EXPECT_EQ(make_record("a", 1.0, 0.0, 1.0, 0.0, 1.0).verdict, Verdict::pass);
  EXPECT_EQ(make_record("a", 1.0 + 1e-14, 0.0, 1.0, 0.0, 1.0).verdict, Verdict::pass);
  EXPECT_EQ(make_record("a", 1.05, 0.1, 1.0, 0.0, 1.0).verdict, Verdict::inconclusive);
  EXPECT_EQ(make_record("a", 1.05, 0.0, 1.0, 0.1, 1.0).verdict, Verdict::inconclusive);
  EXPECT_EQ(make_record("a", 1.5, 0.1, 1.0, 0.1, 1.0).verdict, Verdict::violation);
  const Record r = make_record("a", 2.0, 0.0, 4.0, 0.0, 3.0);
  EXPECT_DOUBLE_EQ(r.ratio, 0.5);
  EXPECT_DOUBLE_EQ(r.normalized_ratio, 2.0 / 12.0);
}

TEST(Record, ZeroSidesAndInfiniteConstant) {
  const Record z = make_record("z", 0.0, 0.0, 0.0, 0.0, 5.0);
  EXPECT_EQ(z.verdict, Verdict::pass);
  EXPECT_EQ(z.ratio, 0.0);
  const Record i = make_record("i", 1.0, 0.0, 0.0, 0.0, 5.0);
  EXPECT_TRUE(std::isinf(i.ratio));
  EXPECT_EQ(i.verdict, Verdict::violation);
  EXPECT_EQ(make_record("c", 10.0, 0.0, 1.0, 0.0, INFINITY).verdict, Verdict::pass);
}

TEST(Record, AdditiveForm) {
  const Record r = make_record("l", -0.5, 0.0, -0.4, 0.0, 1.0, true);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_NEAR(r.ratio, std::exp(-0.1), 1e-15);
  EXPECT_EQ(make_record("l", -0.3, 0.0, -0.4, 0.0, 1.0, true).verdict, Verdict::violation);
  EXPECT_EQ(make_record("l", -0.3, 0.05, -0.4, 0.06, 1.0, true).verdict, Verdict::inconclusive);
}

TEST(Record, PassSoundness) {
  // pass implies lhs <= C rhs + margin
  for (double lhs : {0.5, 0.99, 1.0, 1.01, 1.2})
    for (double e : {0.0, 0.01, 0.1}) {
      const Record r = make_record("x", lhs, e, 1.0, e, 1.0);
      if (r.verdict == Verdict::pass) EXPECT_LE(r.lhs, r.front_constant * r.rhs + r.margin);
    }
}

TEST(Gates, Examples) {
  const auto frac = check_admissibility(base(Theorem::frac_hardy));
  ASSERT_EQ(frac.size(), 1u);
  EXPECT_NEAR(frac[0].value, 0.8, 1e-8);
  EXPECT_TRUE(frac[0].pass);

  Scenario rad = base(Theorem::radial_hardy, 2);
  rad.p = 2.0;
  EXPECT_FALSE(check_admissibility(rad).front().pass);

  Scenario nash = base(Theorem::nash);
  nash.q = 3.0;
  const auto g = check_admissibility(nash);
  bool found = false;
  for (const auto& x : g)
    if (x.name == "nash_gate") {
      found = true;
      EXPECT_NEAR(x.value, std::pow(2.0, 5.0 / 6.0) * std::pow(2.0, 2.0 / 3.0) / 4.25, 1e-6);
      EXPECT_NEAR(x.value, 0.6655, 2e-4);
      EXPECT_TRUE(x.pass);
    }
  EXPECT_TRUE(found);
}

TEST(Gates, LogHsReportsStatedAndChainedGates) {
  Scenario sc = base(Theorem::log_hs);
  sc.q = 3.0;
  const auto rep = verify(sc);
  ASSERT_NE(find_gate(rep, "log_hs_gate"), nullptr);
  ASSERT_NE(find_gate(rep, "hs_gate"), nullptr);
  ASSERT_NE(find_gate(rep, "1<p<q"), nullptr);
}

TEST(Gates, FailingGateEvaluatesNoIntegral) {
  Scenario sc = base(Theorem::frac_hardy);
  sc.s = 0.4;  // sp < Q: gate 1.11
  const auto rep = verify(sc);
  EXPECT_FALSE(rep.applicable());
  EXPECT_EQ(rep.evaluations, 0);
  ASSERT_EQ(rep.results.size(), 1u);
  EXPECT_EQ(rep.results[0].verdict, Verdict::not_applicable);
  EXPECT_TRUE(std::isinf(rep.constants.front_constant));
  EXPECT_EQ(exit_code(rep), 0);
}

TEST(IntegralHardy, ClassicalCase) {
  Scenario sc = base(Theorem::integral_hardy);
  sc.weights.alpha = 0.0;
  sc.weights.beta = -2.0;
  TestFunction f;
  f.id = "ind";
  f.profile = Profile::indicator;
  f.r0 = 0.0;
  f.R = 1.0;
  sc.corpus = {f};
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 1u);
  const Record& r = rep.results[0];
  EXPECT_NEAR(r.lhs, 4.0, 1e-8);
  EXPECT_NEAR(r.rhs, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.ratio, 2.0 * std::sqrt(2.0), 1e-3);
  ASSERT_TRUE(rep.constants.bracket);
  EXPECT_GE(r.ratio, rep.constants.bracket->first);
  EXPECT_LE(r.ratio, rep.constants.bracket->second);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(IntegralHardy, ZeroAndScaling) {
  Scenario sc = base(Theorem::integral_hardy);
  sc.weights.g = PowerExpr::power_of_x(-2.0);
  sc.weights.h = PowerExpr::constant(1.0);
  TestFunction zero = tent("zero");
  zero.height = 0.0;
  sc.corpus = {zero, tent(), tent().scaled(2.0)};
  const auto rep = verify(sc);
  EXPECT_EQ(rep.results[0].lhs, 0.0);
  EXPECT_EQ(rep.results[0].rhs, 0.0);
  EXPECT_NEAR(rep.results[1].ratio, rep.results[2].ratio, 1e-12);
}

TEST(FracHardy, TentOnLinePasses) {
  const auto rep = verify(base(Theorem::frac_hardy));
  ASSERT_EQ(rep.results.size(), 1u);
  EXPECT_EQ(rep.results[0].verdict, Verdict::pass);
  EXPECT_LT(rep.results[0].normalized_ratio, 1.0);
  EXPECT_NEAR(rep.constants.front_constant, 8.4090, 1e-4);
}

TEST(FracHardy, ZeroFunction) {
  Scenario sc = base(Theorem::frac_hardy);
  TestFunction z = tent("zero");
  z.height = 0.0;
  sc.corpus = {z};
  const auto rep = verify(sc);
  EXPECT_EQ(rep.results[0].lhs, 0.0);
  EXPECT_EQ(rep.results[0].rhs, 0.0);
  EXPECT_EQ(rep.results[0].verdict, Verdict::pass);
}

TEST(FracHardy, OverrideProducesViolationAndExitTwo) {
  Scenario sc = base(Theorem::frac_hardy);
  sc.front_override = 1e-3;
  const auto rep = verify(sc);
  EXPECT_EQ(rep.results[0].verdict, Verdict::violation);
  EXPECT_EQ(exit_code(rep), 2);
}

TEST(FracHardy, PerFunctionErrorsDoNotStopTheRun) {
  Scenario sc = base(Theorem::frac_hardy);
  TestFunction bad = tent("indicator");
  bad.profile = Profile::indicator;
  sc.corpus = {bad, tent()};
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 2u);
  EXPECT_EQ(rep.results[0].verdict, Verdict::error);
  EXPECT_EQ(rep.results[1].verdict, Verdict::pass);
  EXPECT_EQ(exit_code(rep), 1);
}

TEST(RadialHardy, TentPassesAndExtremalStaysBelowConstant) {
  Scenario sc = base(Theorem::radial_hardy, 2);
  sc.p = 1.5;
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 1u + sc.extremal.epsilons.size());
  for (const auto& r : rep.results) {
    EXPECT_EQ(r.verdict, Verdict::pass) << r.id;
    EXPECT_LE(r.ratio, 3.0 * (1 + 1e-6));
  }
  EXPECT_LT(rep.results[0].ratio, 3.0);
}

TEST(RadialHardy, NonRadialIsError) {
  Scenario sc = base(Theorem::radial_hardy, 2);
  sc.p = 1.5;
  TestFunction t = tent("nonradial");
  t.angular_eps = 0.3;
  sc.corpus = {t};
  sc.extremal.epsilons.clear();
  const auto rep = verify(sc);
  EXPECT_EQ(rep.results[0].verdict, Verdict::error);
}

TEST(Uncertainty, HolderStepIsCauchySchwarz) {
  Scenario sc = base(Theorem::uncertainty);
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 2u);
  EXPECT_EQ(rep.results[0].verdict, Verdict::pass);
  EXPECT_EQ(rep.results[1].id, "tent.holder");
  EXPECT_LT(rep.results[1].ratio, 1.0);
  // Cauchy-Schwarz from the oracle moments: (2/3) / sqrt(0.3708 * 1.2299)
  EXPECT_NEAR(rep.results[1].ratio, (2.0 / 3.0) / std::sqrt(0.370781113224255 * 1.2298582404915859), 1e-10);
}

TEST(Uncertainty, GateNeedsQBelowSp) {
  Scenario sc = base(Theorem::uncertainty);
  sc.s = 0.45;
  const auto rep = verify(sc);
  EXPECT_FALSE(find_gate(rep, "Q<sp")->pass);
  EXPECT_EQ(rep.results[0].verdict, Verdict::not_applicable);
}

TEST(HardySobolev, TentOnLinePasses) {
  Scenario sc = base(Theorem::hardy_sobolev);
  sc.q = 3.0;
  const auto rep = verify(sc);
  EXPECT_EQ(rep.results[0].verdict, Verdict::pass);
}

TEST(HardySobolev, CollapsesToFracHardyWhenPEqualsQ) {
  Scenario hs = base(Theorem::hardy_sobolev);
  hs.weights.z = PowerExpr::parse("|x|^0.25");
  Scenario fr = base(Theorem::frac_hardy);
  fr.weights.a = PowerExpr::parse("|y|^0.25");
  const auto a = verify(hs);
  const auto b = verify(fr);
  EXPECT_NEAR(a.constants.d1, b.constants.d1, 1e-8);
  EXPECT_NEAR(a.results[0].lhs, b.results[0].lhs, 1e-8 * b.results[0].lhs);
}

TEST(LogHolder, IndicatorEqualityAndStepGap) {
  Scenario sc = base(Theorem::log_holder);
  sc.q = 3.0;
  TestFunction ind = tent("ind");
  ind.profile = Profile::indicator;
  TestFunction step = tent("step");
  step.profile = Profile::step;
  sc.corpus = {ind, step, step.scaled(3.0)};
  const auto rep = verify(sc);
  const Record& e = rep.results[0];
  EXPECT_LE(std::abs(e.lhs - e.rhs), e.margin);
  EXPECT_NEAR(e.lhs, -std::log(2.0), 1e-12);
  const Record& s = rep.results[1];
  // tests/oracles/oracles.py two_level()
  EXPECT_NEAR(s.lhs, -0.5004024235381879, 1e-10);
  EXPECT_NEAR(s.rhs, -0.4338645826298624, 1e-10);
  EXPECT_EQ(s.verdict, Verdict::pass);
  EXPECT_NEAR(rep.results[2].lhs, s.lhs, 1e-12);
  EXPECT_NEAR(rep.results[2].rhs, s.rhs, 1e-12);
}

TEST(LogHs, TentOnLinePassesBothSteps) {
  Scenario sc = base(Theorem::log_hs);
  sc.q = 3.0;
  sc.corpus = {tent(), tent().scaled(5.0)};
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 4u);
  for (const auto& r : rep.results) EXPECT_EQ(r.verdict, Verdict::pass) << r.id;
  EXPECT_NEAR(rep.results[1].lhs, rep.results[3].lhs, 1e-10);
  EXPECT_NEAR(rep.results[1].rhs, rep.results[3].rhs, 1e-6);
}

TEST(Nash, TentOnLinePassesWithJensen) {
  Scenario sc = base(Theorem::nash);
  sc.q = 3.0;
  sc.corpus = {tent(), tent().scaled(2.0)};
  const auto rep = verify(sc);
  ASSERT_EQ(rep.results.size(), 4u);
  for (const auto& r : rep.results) EXPECT_EQ(r.verdict, Verdict::pass) << r.id;
  EXPECT_EQ(rep.results[1].id, "tent.jensen");
  // u -> 2u: both sides scale by 2^(4 - 4/q)
  EXPECT_NEAR(rep.results[2].lhs / rep.results[0].lhs, std::pow(2.0, 4.0 - 4.0 / 3.0), 1e-10);
  EXPECT_NEAR(rep.results[2].ratio, rep.results[0].ratio, 1e-6 * rep.results[0].ratio);
}

TEST(Nash, RequiresPTwo) {
  Scenario sc = base(Theorem::nash);
  sc.p = 3.0;
  sc.q = 4.0;
  EXPECT_FALSE(verify(sc).applicable());
}

TEST(ExitCode, Precedence) {
  VerificationReport r;
  r.results.resize(3);
  EXPECT_EQ(exit_code(r), 0);
  r.results[0].verdict = Verdict::inconclusive;
  EXPECT_EQ(exit_code(r), 3);
  r.results[1].verdict = Verdict::error;
  EXPECT_EQ(exit_code(r), 1);
  r.results[2].verdict = Verdict::violation;
  EXPECT_EQ(exit_code(r), 2);
}

TEST(NearExtremal, ShapeAndBounds) {
  const Geometry g(GroupSpec::euclidean(2), NormKind::euclidean);
  const TestFunction t = near_extremal(2.0, 1.5, 0.05, 1e4, {}, g);
  EXPECT_NEAR(t.kappa, -1.0 / 3.0 + 0.05, 1e-15);
  EXPECT_EQ(t.R, 1e4);
  EXPECT_GT(t.ramp, 0.0);
  EXPECT_LE(2.0 * t.ramp, std::log(1e4));
}
