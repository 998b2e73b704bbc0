#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "fhardy/gagliardo.hpp"
#include "fhardy/parallel.hpp"
#include "fhardy/quadrature.hpp"
#include "fhardy/report.hpp"
#include "fhardy/verifier.hpp"

using namespace fhardy;

namespace {

// several threads even on a single core, so the parallel path really interleaves
class Parallel : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }
  int saved_ = 1;
};

QuadratureScheme with(Exec e) {
  QuadratureScheme s;
  s.exec = e;
  s.order = 4;
  s.radial_panels = 4;
  return s;
}

TestFunction tent() {
  TestFunction t;
  t.id = "tent";
  t.r0 = 0.5;
  t.peak = 1.0;
  t.R = 2.0;
  t.angular_eps = 0.3;
  return t;
}

}  // namespace

TEST_F(Parallel, MapNodesMatchesSerialAndRethrows) {
  auto f = [](std::int64_t i) { return std::sin(0.1 * static_cast<double>(i)); };
  EXPECT_EQ(map_nodes<double>(1000, Exec::parallel, f), map_nodes<double>(1000, Exec::serial, f));
  EXPECT_THROW(map_nodes<double>(100, Exec::parallel,
                                 [](std::int64_t i) -> double {
                                   if (i == 57) throw std::runtime_error("boom");
                                   return 0.0;
                                 }),
               std::runtime_error);
}

TEST_F(Parallel, GagliardoBitwiseEqual) {
  for (const Geometry& g : {Geometry(GroupSpec::euclidean(1), NormKind::euclidean),
                            Geometry(GroupSpec::euclidean(2), NormKind::euclidean)}) {
    const auto a = integrate_gagliardo(tent(), 2.0, 0.75, PowerExpr::constant(1.0), with(Exec::parallel), g);
    const auto b = integrate_gagliardo(tent(), 2.0, 0.75, PowerExpr::constant(1.0), with(Exec::serial), g);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_bound, b.error_bound);
    EXPECT_EQ(a.evaluations, b.evaluations);
  }
}

TEST_F(Parallel, PolarAndCartesianBitwiseEqual) {
  const Geometry g(GroupSpec::heisenberg(), NormKind::koranyi);
  auto f = [](double r, const Point& w) { return std::exp(-r * r) * (1.0 + 0.5 * w[0]); };
  const auto a = integrate_polar(f, with(Exec::parallel), g);
  const auto b = integrate_polar(f, with(Exec::serial), g);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error_bound, b.error_bound);
  auto h = [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); };
  const Box box{{-6, 6}, {-6, 6}};
  EXPECT_EQ(integrate_cartesian(h, box, with(Exec::parallel), 2).value,
            integrate_cartesian(h, box, with(Exec::serial), 2).value);
}

TEST_F(Parallel, VerifyReportsBitwiseEqual) {
  Scenario sc = parse_scenario(R"({"theorem": "hardy_sobolev", "seed": 2, "group": {"name": "euclidean", "dim": 1},
    "exponents": {"p": 2, "q": 3, "s": 0.75},
    "corpus": [{"id": "tent", "profile": "tent", "r0": 1, "peak": 1.5, "R": 2},
               {"id": "ring", "profile": "gaussian_ring", "r0": 1, "R": 3, "sigma": 0.5}]})");
  sc.scheme.exec = Exec::parallel;
  const std::string par = write_json(report_json(verify(sc), false));
  sc.scheme.exec = Exec::serial;
  std::string ser = write_json(report_json(verify(sc), false));
  // the scenario echo names the execution mode; everything else must agree
  const auto pos = ser.find("\"serial\"");
  ASSERT_NE(pos, std::string::npos);
  ser.replace(pos, 8, "\"parallel\"");
  EXPECT_EQ(par, ser);
}
