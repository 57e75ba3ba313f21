#include <benchmark/benchmark.h>

#include "lck/checks.hpp"
#include "lck/hopf.hpp"

using namespace lck;

namespace {

const HopfStructure& structure() {
  static HopfStructure hs = build_hopf_structure(standard_hopf(2));
  return hs;
}

ChartPoint cylinder_sample() {
  Eigen::VectorXd w(4);
  w << 0.6, -0.2, 0.5, std::sqrt(1.0 - 0.6 * 0.6 - 0.2 * 0.2 - 0.5 * 0.5);
  return make_cylinder_point(0.35, w);
}

ChartPoint punctured_sample() { return structure().H.apply(cylinder_sample()); }

}  // namespace

static void BM_JetProduct(benchmark::State& state) {
  JetScalar a = JetScalar::variable(5, 0, 1.3);
  JetScalar b = JetScalar::variable(5, 3, -0.4);
  JetScalar c = jet_exp(a) * jet_sin(b);
  for (auto _ : state) {
    JetScalar r = (a + c) * (b + c) * jet_inv(c + 2.0);
    benchmark::DoNotOptimize(r.v);
  }
}
BENCHMARK(BM_JetProduct);

static void BM_OmegaCoefficients(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = cylinder_sample();
  for (auto _ : state) {
    JetMat c = hs.OmegaA.coeff(p);
    benchmark::DoNotOptimize(c.at(0, 1).v);
  }
}
BENCHMARK(BM_OmegaCoefficients);

static void BM_MetricPullback(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = punctured_sample();
  for (auto _ : state) {
    Eigen::MatrixXd g = hs.g_bar.matrix(p);
    benchmark::DoNotOptimize(g(0, 0));
  }
}
BENCHMARK(BM_MetricPullback);

static void BM_Christoffel(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = punctured_sample();
  for (auto _ : state) {
    auto gam = christoffel(hs.g_bar, p);
    benchmark::DoNotOptimize(gam[0](0, 0));
  }
}
BENCHMARK(BM_Christoffel);

static void BM_LeeExtraction(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = punctured_sample();
  for (auto _ : state) {
    LeeExtraction ex = extract_lee_form(hs.omega_bar, p);
    benchmark::DoNotOptimize(ex.residual);
  }
}
BENCHMARK(BM_LeeExtraction);

static void BM_CovariantLee(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = punctured_sample();
  for (auto _ : state) {
    Eigen::MatrixXd m = covariant_derivative_oneform(hs.g_bar, hs.theta_bar, p);
    benchmark::DoNotOptimize(m(0, 0));
  }
}
BENCHMARK(BM_CovariantLee);

static void BM_CoframeRecovery(benchmark::State& state) {
  const HopfStructure& hs = structure();
  ChartPoint p = punctured_sample();
  Eigen::VectorXcd diag(2);
  diag << std::polar(1.0, 0.4), std::polar(1.0, -0.9);
  SmoothMap f = punctured_diagonal_map(2, diag);
  for (auto _ : state) {
    LCRDecomposition d = analyze_lcr(hs, f, p);
    benchmark::DoNotOptimize(d.lambda);
  }
}
BENCHMARK(BM_CoframeRecovery);

BENCHMARK_MAIN();
