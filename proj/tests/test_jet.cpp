#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lck/jet.hpp"

#include <cmath>
#include <vector>

using namespace lck;

namespace {

// Test function with nontrivial mixed partials, evaluated either on plain
// doubles (for finite differencing) or on jets.
template <typename T>
T sample_fn(const T& x, const T& y) {
  return jet_exp(jet_sin(x) * y) + x * x / (1.0 + y * y);
}

double sample_fn_plain(double x, double y) {
  return std::exp(std::sin(x) * y) + x * x / (1.0 + y * y);
}

JetScalar sample_jet(double x, double y) {
  JetScalar jx = JetScalar::variable(2, 0, x);
  JetScalar jy = JetScalar::variable(2, 1, y);
  return sample_fn(jx, jy);
}

}  // namespace

TEST_CASE("variable jets seed the identity derivative") {
  JetScalar j = JetScalar::variable(3, 1, 4.5);
  CHECK(j.v == 4.5);
  CHECK(j.g(0) == 0.0);
  CHECK(j.g(1) == 1.0);
  CHECK(j.g(2) == 0.0);
  CHECK(j.h.cwiseAbs().maxCoeff() == 0.0);
  CHECK(j.ord == 2);
}

TEST_CASE("gradient and hessian match central finite differences") {
  const double x = 0.7, y = -1.3, h = 1e-5;
  JetScalar j = sample_jet(x, y);

  CHECK(j.v == doctest::Approx(sample_fn_plain(x, y)).epsilon(1e-14));

  double fx = (sample_fn_plain(x + h, y) - sample_fn_plain(x - h, y)) / (2 * h);
  double fy = (sample_fn_plain(x, y + h) - sample_fn_plain(x, y - h)) / (2 * h);
  CHECK(j.g(0) == doctest::Approx(fx).epsilon(1e-8));
  CHECK(j.g(1) == doctest::Approx(fy).epsilon(1e-8));

  double fxx = (sample_fn_plain(x + h, y) - 2 * sample_fn_plain(x, y) + sample_fn_plain(x - h, y)) / (h * h);
  double fyy = (sample_fn_plain(x, y + h) - 2 * sample_fn_plain(x, y) + sample_fn_plain(x, y - h)) / (h * h);
  double fxy = (sample_fn_plain(x + h, y + h) - sample_fn_plain(x + h, y - h) -
                sample_fn_plain(x - h, y + h) + sample_fn_plain(x - h, y - h)) /
               (4 * h * h);
  CHECK(j.h(0, 0) == doctest::Approx(fxx).epsilon(1e-4));
  CHECK(j.h(1, 1) == doctest::Approx(fyy).epsilon(1e-4));
  CHECK(j.h(0, 1) == doctest::Approx(fxy).epsilon(1e-5));
  CHECK(j.h(1, 0) == doctest::Approx(j.h(0, 1)).epsilon(1e-14));
}

TEST_CASE("product and quotient rules are exact") {
  JetScalar x = JetScalar::variable(2, 0, 1.2);
  JetScalar y = JetScalar::variable(2, 1, 0.4);
  JetScalar f = jet_sin(x) + y;
  JetScalar g = jet_exp(y) * x;

  JetScalar p = f * g;
  CHECK(p.v == doctest::Approx(f.v * g.v).epsilon(1e-15));
  CHECK((p.g - (f.g * g.v + g.g * f.v)).cwiseAbs().maxCoeff() < 1e-15);

  JetScalar q = f / g;
  JetScalar back = q * g;
  CHECK(back.v == doctest::Approx(f.v).epsilon(1e-14));
  CHECK((back.g - f.g).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((back.h - f.h).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("function identities hold at every jet level") {
  JetScalar x = JetScalar::variable(2, 0, 1.7);
  JetScalar y = JetScalar::variable(2, 1, -0.6);
  JetScalar u = x * x + jet_cos(y) + 0.5;

  JetScalar a = jet_exp(jet_log(u));
  CHECK(a.v == doctest::Approx(u.v).epsilon(1e-14));
  CHECK((a.g - u.g).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((a.h - u.h).cwiseAbs().maxCoeff() < 1e-12);

  JetScalar b = jet_sqrt(u) * jet_sqrt(u);
  CHECK(b.v == doctest::Approx(u.v).epsilon(1e-14));
  CHECK((b.g - u.g).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((b.h - u.h).cwiseAbs().maxCoeff() < 1e-12);

  JetScalar c = jet_sin(u) * jet_sin(u) + jet_cos(u) * jet_cos(u);
  CHECK(c.v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.g.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(c.h.cwiseAbs().maxCoeff() < 1e-12);

  JetScalar d = jet_pow(u, 3) - u * u * u;
  CHECK(std::abs(d.v) < 1e-12);
  CHECK(d.g.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(d.h.cwiseAbs().maxCoeff() < 1e-11);

  JetScalar e = u * jet_inv(u);
  CHECK(e.v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.g.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(e.h.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("derivative extraction shifts levels down") {
  JetScalar j = sample_jet(0.3, 0.9);
  JetScalar dx = j.derivative(0);
  CHECK(dx.ord == 1);
  CHECK(dx.v == j.g(0));
  CHECK((dx.g - j.h.row(0).transpose()).cwiseAbs().maxCoeff() < 1e-15);

  JetScalar dxy = dx.derivative(1);
  CHECK(dxy.ord == 0);
  CHECK(dxy.v == j.h(0, 1));
}

TEST_CASE("order tracking propagates through arithmetic") {
  JetScalar full = JetScalar::variable(2, 0, 2.0);
  JetScalar low = full.derivative(0);
  CHECK((full * low).ord == 1);
  CHECK((full + low).ord == 1);
  CHECK(jet_exp(low).ord == 1);
  CHECK(low.derivative(0).ord == 0);
}

TEST_CASE("jet_chain reproduces composition derivatives") {
  // inner map (x, y) -> (u, v) = (x * y, sin(x) + y^2), outer f(u, v) = exp(u) / (1 + v^2)
  auto compose_plain = [](double x, double y) {
    double u = x * y;
    double v = std::sin(x) + y * y;
    return std::exp(u) / (1.0 + v * v);
  };
  const double x = 0.4, y = 1.1, h = 1e-5;

  JetScalar jx = JetScalar::variable(2, 0, x);
  JetScalar jy = JetScalar::variable(2, 1, y);
  std::vector<JetScalar> inner = {jx * jy, jet_sin(jx) + jy * jy};

  JetScalar ju = JetScalar::variable(2, 0, inner[0].v);
  JetScalar jv = JetScalar::variable(2, 1, inner[1].v);
  JetScalar outer = jet_exp(ju) / (1.0 + jv * jv);

  JetScalar chained = jet_chain(outer, inner);
  CHECK(chained.v == doctest::Approx(compose_plain(x, y)).epsilon(1e-14));

  double fx = (compose_plain(x + h, y) - compose_plain(x - h, y)) / (2 * h);
  double fy = (compose_plain(x, y + h) - compose_plain(x, y - h)) / (2 * h);
  CHECK(chained.g(0) == doctest::Approx(fx).epsilon(1e-8));
  CHECK(chained.g(1) == doctest::Approx(fy).epsilon(1e-8));

  double fxy = (compose_plain(x + h, y + h) - compose_plain(x + h, y - h) -
                compose_plain(x - h, y + h) + compose_plain(x - h, y - h)) /
               (4 * h * h);
  CHECK(chained.h(0, 1) == doctest::Approx(fxy).epsilon(1e-5));
  CHECK((chained.h - chained.h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("jet_dot accumulates pairings") {
  JetScalar x = JetScalar::variable(2, 0, 0.8);
  JetScalar y = JetScalar::variable(2, 1, 1.5);
  JetVec a = {x, y};
  JetVec b = {y, x};
  JetScalar d = jet_dot(a, b);  // 2xy
  CHECK(d.v == doctest::Approx(2 * 0.8 * 1.5).epsilon(1e-15));
  CHECK(d.g(0) == doctest::Approx(2 * 1.5).epsilon(1e-15));
  CHECK(d.g(1) == doctest::Approx(2 * 0.8).epsilon(1e-15));
  CHECK(d.h(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("invalid constructions are rejected") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, -1, 0;
  CHECK_THROWS_AS(JetScalar(1.0, Eigen::VectorXd::Zero(2), bad), std::invalid_argument);
  CHECK_THROWS_AS(JetScalar(1.0, Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(jet_log(JetScalar::constant(2, -1.0)), std::domain_error);
  CHECK_THROWS_AS(jet_sqrt(JetScalar::constant(2, 0.0)), std::domain_error);
  CHECK_THROWS_AS(jet_inv(JetScalar::constant(2, 0.0)), std::domain_error);
  JetScalar outer = JetScalar::variable(2, 0, 1.0);
  CHECK_THROWS_AS(jet_chain(outer, JetVec{outer, outer, outer}), std::invalid_argument);
}
