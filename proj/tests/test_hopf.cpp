#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lck/hopf.hpp"
#include "lck/sampling.hpp"

#include <cmath>
#include <complex>

using namespace lck;

namespace {

HopfData aniso_data() {
  HopfData d;
  d.n = 2;
  d.a = Eigen::VectorXd(2);
  d.a << 1.0, 2.0;
  d.s = 0.7;
  d.c = {std::polar(1.0, 0.3), std::polar(1.0, -1.1)};
  return d;
}

double weighted_norm(const HopfData& d, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int j = 0; j < d.n; ++j) s += d.a(j) * (w(2 * j) * w(2 * j) + w(2 * j + 1) * w(2 * j + 1));
  return s;
}

// Euclidean orthonormal basis of the sphere tangent directions orthogonal to
// the rotation direction J0 w; these span the horizontal distribution.
std::vector<Eigen::VectorXd> horizontal_basis(const ChartPoint& p) {
  int d = p.dim();
  Eigen::VectorXd w = p.w();
  Eigen::VectorXd jw(d - 1);
  for (int j = 0; j < (d - 1) / 2; ++j) {
    jw(2 * j) = -w(2 * j + 1);
    jw(2 * j + 1) = w(2 * j);
  }
  std::vector<Eigen::VectorXd> basis;
  for (int i = 1; i < d && static_cast<int>(basis.size()) < d - 3; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v(i) = 1.0;
    Eigen::VectorXd sph = v.tail(d - 1);
    sph -= sph.dot(w) * w;
    sph -= sph.dot(jw) * jw;
    v.tail(d - 1) = sph;
    for (const auto& b : basis) v -= v.dot(b) * b;
    if (v.norm() < 1e-6) continue;
    basis.push_back(v.normalized());
  }
  return basis;
}

}  // namespace

TEST_CASE("hopf data validation names the broken constraint") {
  HopfData d = aniso_data();
  CHECK_NOTHROW(validate_hopf_data(d));

  HopfData bad = d;
  bad.a(0) = 3.0;  // not ascending
  CHECK_THROWS_AS(validate_hopf_data(bad), std::invalid_argument);

  bad = d;
  bad.s = 0.0;
  CHECK_THROWS_AS(validate_hopf_data(bad), std::invalid_argument);

  bad = d;
  bad.c[1] = std::complex<double>(0.5, 0.0);
  CHECK_THROWS_AS(validate_hopf_data(bad), std::invalid_argument);

  bad = d;
  bad.n = 1;
  bad.a = Eigen::VectorXd::Ones(1);
  bad.c = {std::complex<double>(1, 0)};
  CHECK_THROWS_AS(validate_hopf_data(bad), std::invalid_argument);
}

TEST_CASE("multiplier spectrum is the weighted contraction") {
  HopfData d = aniso_data();
  auto lam = d.lambda();
  for (int j = 0; j < d.n; ++j) {
    CHECK(std::abs(lam[j] - std::exp(-d.a(j) * d.s) * d.c[j]) < 1e-15);
    CHECK(std::abs(lam[j]) < 1.0);
  }
}

TEST_CASE("contact forms take their closed form values at a pole") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  Eigen::VectorXd w(4);
  w << 1.0, 0.0, 0.0, 0.0;
  ChartPoint p = make_cylinder_point(0.4, w);

  // eta0 row is (-y1, x1, -y2, x2) on the sphere slots, zero on dt
  Eigen::VectorXd row0 = hs.eta0.coeff(p).values().row(0).transpose();
  Eigen::VectorXd expect0(5);
  expect0 << 0.0, 0.0, 1.0, 0.0, 0.0;
  CHECK((row0 - expect0).cwiseAbs().maxCoeff() < 1e-14);

  // etaA divides by the weighted norm, here a_1 = 1
  Eigen::VectorXd rowA = hs.etaA.coeff(p).values().row(0).transpose();
  CHECK((rowA - expect0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reeb normalization holds at random points") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  Sampler smp(81);
  for (int i = 0; i < 15; ++i) {
    ChartPoint p = smp.cylinder_point(2, 2.0);
    Eigen::VectorXd Av = hs.A.values(p);
    CHECK(hs.eta0.evaluate(p, Av) == doctest::Approx(weighted_norm(hs.data, p.w())).epsilon(1e-13));
    CHECK(hs.etaA.evaluate(p, Av) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("metric diagonalizes over the adapted cylinder frame") {
  for (int n : {2, 3}) {
    HopfData d;
    d.n = n;
    d.a = Eigen::VectorXd::LinSpaced(n, 1.0, 1.0 + 0.5 * (n - 1));
    d.s = 0.8;
    d.c.assign(n, std::complex<double>(1.0, 0.0));
    HopfStructure hs = build_hopf_structure(d);

    Sampler smp(82 + n);
    for (int i = 0; i < 10; ++i) {
      ChartPoint p = smp.cylinder_point(n, 2.0);
      double S = weighted_norm(d, p.w());
      Eigen::VectorXd Nv = hs.N.values(p);
      Eigen::VectorXd Av = hs.A.values(p);

      CHECK(hs.g_tilde.evaluate(p, Nv, Nv) == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(hs.g_tilde.evaluate(p, Av, Av) == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(std::abs(hs.g_tilde.evaluate(p, Nv, Av)) < 1e-12);

      auto basis = horizontal_basis(p);
      CHECK(static_cast<int>(basis.size()) == 2 * n - 2);
      for (size_t a = 0; a < basis.size(); ++a) {
        CHECK(hs.g_tilde.evaluate(p, basis[a], basis[a]) == doctest::Approx(-4.0 / S).epsilon(1e-11));
        CHECK(std::abs(hs.g_tilde.evaluate(p, basis[a], Nv)) < 1e-11);
        CHECK(std::abs(hs.g_tilde.evaluate(p, basis[a], Av)) < 1e-11);
        for (size_t b = 0; b < a; ++b)
          CHECK(std::abs(hs.g_tilde.evaluate(p, basis[a], basis[b])) < 1e-11);
      }
    }
  }
}

TEST_CASE("metric takes the expected value on a coordinate direction") {
  HopfStructure hs = build_hopf_structure(standard_hopf(2));
  Eigen::VectorXd w(4);
  w << 1.0, 0.0, 0.0, 0.0;
  ChartPoint p = make_cylinder_point(-0.2, w);
  Eigen::VectorXd dx2 = Eigen::VectorXd::Zero(5);
  dx2(3) = 1.0;  // second complex coordinate, horizontal at this pole
  CHECK(hs.g_tilde.evaluate(p, dx2, dx2) == doctest::Approx(-4.0).epsilon(1e-13));
}

TEST_CASE("the homothety normalized form has the product components") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  Sampler smp(84);
  for (int i = 0; i < 10; ++i) {
    ChartPoint p = smp.cylinder_point(2, 1.5);
    Eigen::VectorXd eta = hs.etaA.coeff(p).values().row(0).transpose();
    Eigen::MatrixXd Om = hs.OmegaA.coeff(p).values();
    double et = std::exp(p.t());
    for (int j = 1; j < 5; ++j) CHECK(Om(0, j) == doctest::Approx(et * eta(j)).epsilon(1e-12));

    // omega_tilde = 2 e^{-t} Omega and its coefficients do not depend on t
    Eigen::MatrixXd omt = hs.omega_tilde.coeff(p).values();
    CHECK((omt - 2.0 * std::exp(-p.t()) * Om).cwiseAbs().maxCoeff() < 1e-12);
    ChartPoint p0 = make_cylinder_point(0.0, p.w());
    CHECK((omt - hs.omega_tilde.coeff(p0).values()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("the normalized form is closed and the metric form is not") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  Sampler smp(85);
  for (int i = 0; i < 6; ++i) {
    ChartPoint p = smp.cylinder_point(2, 1.5);
    CHECK(three_form_from_d(hs.OmegaA, p).cwiseAbs().maxCoeff() < 1e-11);

    // d omega_tilde = theta ^ omega_tilde with theta = -dt
    Eigen::VectorXd lhs = three_form_from_d(hs.omega_tilde, p);
    Eigen::VectorXd trow = hs.theta.coeff(p).values().row(0).transpose();
    Eigen::VectorXd rhs = three_form_from_wedge(trow, hs.omega_tilde, p);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("complex structure swaps the flow and rotation directions") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  Sampler smp(86);
  for (int i = 0; i < 10; ++i) {
    ChartPoint p = smp.cylinder_point(2, 2.0);
    Eigen::VectorXd Nv = hs.N.values(p);
    Eigen::VectorXd Av = hs.A.values(p);
    CHECK((hs.JA.apply(p, Nv) + Av).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((hs.JA.apply(p, Av) - Nv).cwiseAbs().maxCoeff() < 1e-12);

    // J restricted to tangents squares to minus the identity
    Eigen::VectorXd v = smp.cylinder_tangent(p);
    CHECK((hs.JA.apply(p, hs.JA.apply(p, v)) + v).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("covering map pushes the flow field to the radial contraction") {
  HopfData d = aniso_data();
  HopfStructure hs = build_hopf_structure(d);
  Sampler smp(87);
  for (int i = 0; i < 10; ++i) {
    ChartPoint p = smp.cylinder_point(2, 1.5);
    TangentVector nt = hs.N.at(p);
    TangentVector push = hs.H.pushforward(nt);
    Eigen::VectorXd q = push.base.x;
    for (int j = 0; j < d.n; ++j) {
      CHECK(push.comp(2 * j) == doctest::Approx(-d.a(j) * q(2 * j)).epsilon(1e-12));
      CHECK(push.comp(2 * j + 1) == doctest::Approx(-d.a(j) * q(2 * j + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("downstairs metric matches the isotropic warped product") {
  // for unit weights the pulled back metric has the closed form
  //   g(u,u) r^2 = 2 on the radial and rotation directions,
  //   g(h,h) r^2 = -4 |h|^2 on the horizontal complement, cross terms zero,
  // and the lee covector is q / r^2
  HopfStructure hs = build_hopf_structure(standard_hopf(2));
  Sampler smp(88);
  Eigen::MatrixXd J0(4, 4);
  J0.setZero();
  J0(1, 0) = 1;
  J0(0, 1) = -1;
  J0(3, 2) = 1;
  J0(2, 3) = -1;
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd q = smp.gaussian(4);
    if (q.norm() < 0.3) q += Eigen::VectorXd::Ones(4);
    double r = q.norm();
    ChartPoint p = make_punctured_point(q);
    Eigen::MatrixXd G = hs.g_bar.matrix(p);

    Eigen::VectorXd ur = q / r;
    Eigen::VectorXd va = J0 * ur;
    Eigen::VectorXd h(4);
    h << -q(2), q(3), q(0), -q(1);
    h -= h.dot(ur) * ur;
    h -= h.dot(va) * va;
    h.normalize();

    CHECK(ur.dot(G * ur) * r * r == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(va.dot(G * va) * r * r == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(h.dot(G * h) * r * r == doctest::Approx(-4.0).epsilon(1e-11));
    CHECK(std::abs(ur.dot(G * va)) < 1e-12);
    CHECK(std::abs(ur.dot(G * h)) < 1e-12);
    CHECK(std::abs(va.dot(G * h)) < 1e-12);

    Eigen::VectorXd trow = hs.theta_bar.coeff(p).values().row(0).transpose();
    CHECK((trow - q / (r * r)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("flow elements translate the cylinder coordinate") {
  HopfData d = aniso_data();
  Sampler smp(89);
  ChartPoint p = smp.cylinder_point(2, 1.0);
  ChartPoint moved = group_action(d, flow_element(0.9), p);
  CHECK(moved.t() == doctest::Approx(p.t() + 0.9).epsilon(1e-13));
  CHECK((moved.w() - p.w()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("torus elements rotate each complex coordinate") {
  HopfData d = aniso_data();
  Sampler smp(90);
  ChartPoint p = smp.cylinder_point(2, 1.0);
  Eigen::VectorXd ang(2);
  ang << 0.7, -1.2;
  ChartPoint moved = group_action(d, torus_element(ang), p);
  CHECK(moved.t() == doctest::Approx(p.t()).epsilon(1e-13));
  for (int j = 0; j < 2; ++j) {
    std::complex<double> z(p.w()(2 * j), p.w()(2 * j + 1));
    std::complex<double> out(moved.w()(2 * j), moved.w()(2 * j + 1));
    CHECK(std::abs(out - std::polar(1.0, ang(j)) * z) < 1e-13);
  }
}

TEST_CASE("deck transformations contract by the multiplier spectrum") {
  HopfData d = aniso_data();
  auto lam = d.lambda();
  Sampler smp(91);
  Eigen::VectorXd q = smp.gaussian(4);
  ChartPoint p = make_punctured_point(q);
  for (int k = 1; k <= 3; ++k) {
    ChartPoint im = group_action(d, deck_element(k), p);
    for (int j = 0; j < 2; ++j) {
      std::complex<double> z(q(2 * j), q(2 * j + 1));
      std::complex<double> out(im.x(2 * j), im.x(2 * j + 1));
      CHECK(std::abs(out - std::pow(lam[j], k) * z) < 1e-13);
    }
    // freeness: the displacement admits the uniform lower bound
    double amin = d.a.minCoeff();
    double bound = (1.0 - std::exp(-amin * k * d.s)) * q.norm();
    CHECK((im.x - q).norm() >= bound - 1e-13);
  }
}

TEST_CASE("conjugated diagonal reproduces the multiplier spectrum") {
  HopfData d = aniso_data();
  Eigen::VectorXd ang(2);
  ang << std::arg(d.c[0]), std::arg(d.c[1]);
  Eigen::VectorXcd diag = conjugated_diagonal(d, d.s, ang);
  auto lam = d.lambda();
  for (int j = 0; j < 2; ++j) CHECK(std::abs(diag(j) - lam[j]) < 1e-14);
}

TEST_CASE("unitary elements require block orthogonal input") {
  Eigen::MatrixXd U = Eigen::MatrixXd::Identity(4, 4);
  CHECK_NOTHROW(unitary_element(U));

  Eigen::MatrixXd skew = U;
  skew(0, 0) = 2.0;  // not orthogonal
  CHECK_THROWS_AS(unitary_element(skew), std::invalid_argument);

  // orthogonal but not complex linear: swap of the two real slots of z_1
  Eigen::MatrixXd swap = Eigen::MatrixXd::Identity(4, 4);
  swap(0, 0) = 0.0;
  swap(1, 1) = 0.0;
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  CHECK_THROWS_AS(unitary_element(swap), std::invalid_argument);
}

TEST_CASE("rescaling recovers the metric form from the normalized one") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  auto [form, lee] = theorem_A_rescale(hs.OmegaA, hs.xi, hs.JA);
  Sampler smp(92);
  for (int i = 0; i < 6; ++i) {
    ChartPoint p = smp.cylinder_point(2, 1.5);
    Eigen::MatrixXd diff = form.coeff(p).values() - hs.omega_tilde.coeff(p).values();
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-11);
    Eigen::VectorXd lrow = lee.coeff(p).values().row(0).transpose();
    CHECK(lrow(0) == doctest::Approx(-1.0).epsilon(1e-11));
    CHECK(lrow.tail(4).cwiseAbs().maxCoeff() < 1e-11);
  }

  ScalarField s = rescale_s_function(hs.OmegaA, hs.xi, hs.JA);
  ChartPoint p = smp.cylinder_point(2, 1.0);
  CHECK(s.value(p) == doctest::Approx(std::exp(p.t())).epsilon(1e-12));
}

TEST_CASE("rescaling aborts when the pairing is not positive") {
  HopfStructure hs = build_hopf_structure(aniso_data());
  DifferentialForm negated;
  negated.chart = hs.OmegaA.chart;
  negated.degree = 2;
  DifferentialForm base = hs.OmegaA;
  negated.coeff = [base](const ChartPoint& p) {
    JetMat c = base.coeff(p);
    for (auto& e : c.a) e = -e;
    return c;
  };
  auto [form, lee] = theorem_A_rescale(negated, hs.xi, hs.JA);
  Sampler smp(93);
  ChartPoint p = smp.cylinder_point(2, 1.0);
  CHECK_THROWS_AS(form.coeff(p), std::runtime_error);
}
