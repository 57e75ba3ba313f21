#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lck/chart.hpp"
#include "lck/hopf_data.hpp"

namespace lck {

// Deterministic sample source. All randomness in the test and report
// pipelines flows through one Sampler seeded from the run configuration, and
// every draw happens in a fixed order, so identical configurations replay
// identical samples.
struct Sampler {
  std::mt19937_64 rng;

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
  }

  Eigen::VectorXd gaussian(int dim) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = d(rng);
    return v;
  }

  // Point (t, w) with t uniform in [-t_range, t_range] and w a normalized
  // Gaussian direction on the sphere.
  ChartPoint cylinder_point(int n, double t_range) {
    double t = uniform(-t_range, t_range);
    Eigen::VectorXd w = gaussian(2 * n);
    while (w.norm() < 1e-3) w = gaussian(2 * n);
    w.normalize();
    return make_cylinder_point(t, w);
  }

  // Sphere-tangent cylinder vector with a generic t component.
  Eigen::VectorXd cylinder_tangent(const ChartPoint& p) {
    Eigen::VectorXd v = gaussian(p.dim());
    v.tail(p.dim() - 1) = project_sphere_tangent(p.w(), Eigen::VectorXd(v.tail(p.dim() - 1)));
    return v;
  }

  Eigen::VectorXd chart_vector(const ChartPoint& p) {
    if (p.chart == ChartId::CYLINDER) return cylinder_tangent(p);
    return gaussian(p.dim());
  }

  std::vector<ChartPoint> cylinder_points(int n, double t_range, int count) {
    std::vector<ChartPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(cylinder_point(n, t_range));
    return out;
  }
};

}  // namespace lck
