#include "lck/hermitian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lck {

DifferentialForm fundamental_form(const MetricField& g, const ComplexStructureField& J) {
  if (g.chart != J.chart) throw std::invalid_argument("fundamental_form: chart mismatch");
  DifferentialForm out;
  out.chart = g.chart;
  out.degree = 2;
  out.coeff = [g, J](const ChartPoint& p) {
    JetMat C = g.coeff(p);
    JetMat M = J.mat(p);
    int d = p.dim();
    JetMat r(d, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        JetScalar acc = JetScalar::constant(d, 0.0);
        for (int k = 0; k < d; ++k) acc = acc + C.at(i, k) * M.at(k, j);
        r.at(i, j) = acc;
      }
    // clean the antisymmetry defect left by roundoff
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j) {
        JetScalar anti = (r.at(j, i) - r.at(i, j)) * 0.5;
        r.at(j, i) = anti;
        r.at(i, j) = -anti;
      }
    return r;
  };
  return out;
}

LeeExtraction extract_lee_form(const DifferentialForm& omega, const ChartPoint& p) {
  if (omega.degree != 2) throw std::invalid_argument("extract_lee_form: 2-form expected");
  if (p.dim() < 4) throw std::invalid_argument("extract_lee_form: chart dimension below 4");
  Eigen::MatrixXd A = three_form_wedge_matrix(omega, p);
  Eigen::VectorXd b = three_form_from_d(omega, p);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smax > 0.0) || smin < 1e-10 * smax)
    throw std::runtime_error("extract_lee_form: 2-form is degenerate at this point");
  Eigen::VectorXd theta = svd.solve(b);
  double residual = (A * theta - b).lpNorm<Eigen::Infinity>();
  return {theta, residual};
}

VectorField lee_field(const MetricField& g, const DifferentialForm& theta) {
  if (theta.degree != 1) throw std::invalid_argument("lee_field: 1-form expected");
  if (g.chart != theta.chart) throw std::invalid_argument("lee_field: chart mismatch");
  VectorField out;
  out.chart = g.chart;
  out.comp = [g, theta](const ChartPoint& p) {
    JetMat C = g.coeff(p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C.values());
    int d = p.dim();
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(d - 1);
    if (!(smin > 0.0) || smax / smin > 1e12)
      throw std::runtime_error("lee_field: metric coefficient matrix is singular at this point");
    JetMat Ci = jet_mat_inverse(C);
    JetMat r = theta.coeff(p);
    JetVec comp(d, JetScalar::constant(d, 0.0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) comp[i] = comp[i] + Ci.at(i, j) * r.at(0, j);
    return comp;
  };
  return out;
}

Eigen::VectorXd nijenhuis(const ComplexStructureField& J, const VectorField& X,
                          const VectorField& Y, const ChartPoint& p) {
  VectorField JX = J.apply_field(X);
  VectorField JY = J.apply_field(Y);
  Eigen::VectorXd t1 = bracket(JX, JY).values(p);
  Eigen::VectorXd t2 = J.apply(p, bracket(JX, Y).values(p));
  Eigen::VectorXd t3 = J.apply(p, bracket(X, JY).values(p));
  Eigen::VectorXd t4 = bracket(X, Y).values(p);
  return t1 - t2 - t3 - t4;
}

double levi_form(const DifferentialForm& eta, const ComplexStructureField& J, const ChartPoint& p,
                 const TangentVector& X, const TangentVector& Y) {
  if (eta.degree != 1) throw std::invalid_argument("levi_form: eta must be a 1-form");
  if (std::abs(eta.evaluate(p, X)) > 1e-9 || std::abs(eta.evaluate(p, Y)) > 1e-9)
    throw std::invalid_argument("levi_form: inputs are not in the null distribution of eta");
  DifferentialForm deta = exterior_derivative(eta);
  return deta.evaluate(p, X.comp, J.apply(p, Y.comp));
}

AdaptedCoframe build_adapted_coframe_seeded(const MetricField& g, const ComplexStructureField& J,
                                            const DifferentialForm& theta, const ChartPoint& p,
                                            const std::vector<int>& seed_order) {
  int d = p.dim();
  Eigen::MatrixXd G = g.matrix(p);
  Eigen::MatrixXd MJ = J.mat(p).values();
  JetMat th = theta.coeff(p);
  Eigen::VectorXd trow(d);
  for (int i = 0; i < d; ++i) trow(i) = th.at(0, i).v;
  if (trow.norm() < 1e-12)
    throw std::invalid_argument("build_adapted_coframe: theta vanishes at this point");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible())
    throw std::runtime_error("build_adapted_coframe: metric is singular at this point");
  Eigen::VectorXd lee = lu.solve(trow);
  Eigen::VectorXd anti = MJ * lee;

  auto pair_g = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return u.dot(G * v); };
  double nl = pair_g(lee, lee);
  double na = pair_g(anti, anti);
  if (std::abs(nl) < 1e-12 || std::abs(na) < 1e-12)
    throw std::runtime_error("build_adapted_coframe: null Lee direction");

  // Positive pairing on the perp distribution.
  auto pair_h = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return -pair_g(u, v); };

  AdaptedCoframe cf;
  cf.base = p;
  cf.theta = trow;
  cf.theta_J = MJ.transpose() * trow;  // (theta o J)(e_i) = theta(J e_i)
  cf.lee = lee;
  cf.anti_lee = anti;

  int want = d / 2 - 1;
  for (int s : seed_order) {
    if (static_cast<int>(cf.E.size()) == want) break;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
    u(s) = 1.0;
    u -= (pair_g(u, lee) / nl) * lee + (pair_g(u, anti) / na) * anti;
    for (size_t b = 0; b < cf.E.size(); ++b)
      u -= pair_h(u, cf.E[b]) * cf.E[b] + pair_h(u, cf.JE[b]) * cf.JE[b];
    double nn = pair_h(u, u);
    if (nn < 1e-8) continue;
    Eigen::VectorXd e = u / std::sqrt(nn);
    cf.E.push_back(e);
    cf.JE.push_back(MJ * e);
  }
  if (static_cast<int>(cf.E.size()) != want)
    throw std::runtime_error("build_adapted_coframe: could not complete the perp basis");

  for (int a = 0; a < want; ++a) {
    Eigen::VectorXd re = -(G * cf.E[a]);
    Eigen::VectorXd im = G * cf.JE[a];
    Eigen::VectorXcd row(d);
    for (int i = 0; i < d; ++i) row(i) = std::complex<double>(re(i), im(i));
    cf.theta_alpha.push_back(row);
  }
  return cf;
}

AdaptedCoframe build_adapted_coframe(const MetricField& g, const ComplexStructureField& J,
                                     const DifferentialForm& theta, const ChartPoint& p) {
  std::vector<int> order(p.dim());
  for (int i = 0; i < p.dim(); ++i) order[i] = i;
  return build_adapted_coframe_seeded(g, J, theta, p, order);
}

Eigen::VectorXd lie_derivative_J_on_field(const ComplexStructureField& J, const VectorField& X,
                                          const VectorField& Y, const ChartPoint& p) {
  VectorField JY = J.apply_field(Y);
  Eigen::VectorXd t1 = bracket(X, JY).values(p);
  Eigen::VectorXd t2 = J.apply(p, bracket(X, Y).values(p));
  return t1 - t2;
}

}  // namespace lck
