#include "lck/calculus.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace lck {

namespace {

void require_chart(ChartId a, ChartId b, const char* who) {
  if (a != b) throw std::invalid_argument(std::string(who) + ": operands live on different charts");
}

}  // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.degree != 1 || b.degree != 1) throw std::invalid_argument("wedge: expects two 1-forms");
  require_chart(a.chart, b.chart, "wedge");
  DifferentialForm out;
  out.chart = a.chart;
  out.degree = 2;
  out.coeff = [a, b](const ChartPoint& p) {
    JetMat ra = a.coeff(p), rb = b.coeff(p);
    int d = ra.cols;
    JetMat c(d, d, p.dim());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c.at(i, j) = (ra.at(0, i) * rb.at(0, j) - ra.at(0, j) * rb.at(0, i)) * 0.5;
    return c;
  };
  return out;
}

DifferentialForm exterior_derivative(const ScalarField& f) {
  DifferentialForm out;
  out.chart = f.chart;
  out.degree = 1;
  out.coeff = [f](const ChartPoint& p) {
    JetScalar v = f.eval(p);
    int d = p.dim();
    JetMat c(1, d, d);
    for (int i = 0; i < d; ++i) c.at(0, i) = v.derivative(i);
    return c;
  };
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  if (a.degree == 0) {
    ScalarField f;
    f.chart = a.chart;
    auto coeff = a.coeff;
    f.eval = [coeff](const ChartPoint& p) { return coeff(p).at(0, 0); };
    return exterior_derivative(f);
  }
  if (a.degree != 1) throw std::invalid_argument("exterior_derivative: degree must be 0 or 1");
  DifferentialForm out;
  out.chart = a.chart;
  out.degree = 2;
  out.coeff = [a](const ChartPoint& p) {
    JetMat r = a.coeff(p);
    int d = r.cols;
    JetMat c(d, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c.at(i, j) = (r.at(0, j).derivative(i) - r.at(0, i).derivative(j)) * 0.5;
    return c;
  };
  return out;
}

VectorField bracket(const VectorField& X, const VectorField& Y) {
  require_chart(X.chart, Y.chart, "bracket");
  VectorField out;
  out.chart = X.chart;
  out.comp = [X, Y](const ChartPoint& p) {
    JetVec xc = X.comp(p), yc = Y.comp(p);
    int d = p.dim();
    JetVec r(d, JetScalar::constant(d, 0.0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        r[i] = r[i] + xc[j] * yc[i].derivative(j) - yc[j] * xc[i].derivative(j);
    return r;
  };
  return out;
}

Eigen::MatrixXd lie_derivative_metric(const VectorField& X, const MetricField& g,
                                      const ChartPoint& p) {
  require_chart(X.chart, g.chart, "lie_derivative_metric");
  JetMat c = g.coeff(p);
  JetVec xc = X.comp(p);
  int d = p.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        s += xc[k].v * c.at(i, j).g(k) + c.at(k, j).v * xc[k].g(i) + c.at(i, k).v * xc[k].g(j);
      out(i, j) = s;
    }
  return out;
}

Eigen::MatrixXd lie_derivative_two_form(const VectorField& X, const DifferentialForm& om,
                                        const ChartPoint& p) {
  if (om.degree != 2) throw std::invalid_argument("lie_derivative_two_form: degree 2 expected");
  MetricField as_tensor;
  as_tensor.chart = om.chart;
  as_tensor.coeff = om.coeff;
  return lie_derivative_metric(X, as_tensor, p);
}

Eigen::VectorXd lie_derivative_one_form(const VectorField& X, const DifferentialForm& al,
                                        const ChartPoint& p) {
  if (al.degree != 1) throw std::invalid_argument("lie_derivative_one_form: degree 1 expected");
  require_chart(X.chart, al.chart, "lie_derivative_one_form");
  JetMat r = al.coeff(p);
  JetVec xc = X.comp(p);
  int d = p.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += xc[k].v * r.at(0, i).g(k) + r.at(0, k).v * xc[k].g(i);
    out(i) = s;
  }
  return out;
}

Eigen::MatrixXd lie_derivative_endomorphism(const VectorField& X, const ComplexStructureField& J,
                                            const ChartPoint& p) {
  require_chart(X.chart, J.chart, "lie_derivative_endomorphism");
  JetMat m = J.mat(p);
  JetVec xc = X.comp(p);
  int d = p.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        s += xc[k].v * m.at(i, j).g(k) - m.at(k, j).v * xc[i].g(k) + m.at(i, k).v * xc[k].g(j);
      out(i, j) = s;
    }
  return out;
}

DifferentialForm interior_product(const VectorField& X, const DifferentialForm& omega2) {
  if (omega2.degree != 2) throw std::invalid_argument("interior_product: degree 2 expected");
  require_chart(X.chart, omega2.chart, "interior_product");
  DifferentialForm out;
  out.chart = omega2.chart;
  out.degree = 1;
  out.coeff = [X, omega2](const ChartPoint& p) {
    JetMat c = omega2.coeff(p);
    JetVec xc = X.comp(p);
    int d = p.dim();
    JetMat r(1, d, d);
    for (int i = 0; i < d; ++i) {
      JetScalar acc = JetScalar::constant(d, 0.0);
      for (int j = 0; j < d; ++j) acc = acc + xc[j] * c.at(j, i);
      r.at(0, i) = acc;
    }
    return r;
  };
  return out;
}

namespace {

// Shared pullback kernel: chain the coefficient jets of the target-chart
// object through the map and contract with first derivative jets of the map.
JetMat pullback_coeff(const SmoothMap& f, int degree,
                      const std::function<JetMat(const ChartPoint&)>& coeff, const ChartPoint& p) {
  JetVec inner = f.components(p);
  ChartPoint q = f.apply(p);
  JetMat target = coeff(q);
  int ds = p.dim();
  int dt = static_cast<int>(inner.size());

  std::vector<JetScalar> chained;
  chained.reserve(target.a.size());
  for (const JetScalar& c : target.a) chained.push_back(jet_chain(c, inner));

  std::vector<JetScalar> df;  // df[mu * ds + i] = jet of d_i f^mu
  df.reserve(dt * ds);
  for (int mu = 0; mu < dt; ++mu)
    for (int i = 0; i < ds; ++i) df.push_back(inner[mu].derivative(i));

  if (degree == 0) {
    JetMat r(1, 1, ds);
    r.at(0, 0) = chained[0];
    return r;
  }
  if (degree == 1) {
    JetMat r(1, ds, ds);
    for (int i = 0; i < ds; ++i) {
      JetScalar acc = JetScalar::constant(ds, 0.0);
      for (int mu = 0; mu < dt; ++mu) acc = acc + chained[mu] * df[mu * ds + i];
      r.at(0, i) = acc;
    }
    return r;
  }
  JetMat r(ds, ds, ds);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j) {
      JetScalar acc = JetScalar::constant(ds, 0.0);
      for (int mu = 0; mu < dt; ++mu)
        for (int nu = 0; nu < dt; ++nu)
          acc = acc + chained[mu * dt + nu] * df[mu * ds + i] * df[nu * ds + j];
      r.at(i, j) = acc;
    }
  return r;
}

}  // namespace

DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& alpha) {
  if (alpha.chart != f.target) throw std::invalid_argument("pullback: form not on target chart");
  DifferentialForm out;
  out.chart = f.source;
  out.degree = alpha.degree;
  int deg = alpha.degree;
  auto coeff = alpha.coeff;
  out.coeff = [f, deg, coeff](const ChartPoint& p) { return pullback_coeff(f, deg, coeff, p); };
  return out;
}

MetricField pullback_metric(const SmoothMap& f, const MetricField& g) {
  if (g.chart != f.target) throw std::invalid_argument("pullback_metric: field not on target chart");
  MetricField out;
  out.chart = f.source;
  auto coeff = g.coeff;
  out.coeff = [f, coeff](const ChartPoint& p) { return pullback_coeff(f, 2, coeff, p); };
  return out;
}

ScalarField pullback_scalar(const SmoothMap& f, const ScalarField& h) {
  if (h.chart != f.target) throw std::invalid_argument("pullback_scalar: field not on target chart");
  ScalarField out;
  out.chart = f.source;
  auto eval = h.eval;
  out.eval = [f, eval](const ChartPoint& p) {
    JetVec inner = f.components(p);
    return jet_chain(eval(f.apply(p)), inner);
  };
  return out;
}

std::vector<Eigen::MatrixXd> christoffel(const MetricField& g, const ChartPoint& p) {
  JetMat c = g.coeff(p);
  int d = p.dim();
  Eigen::MatrixXd G = c.values();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
  double smin = svd.singularValues()(d - 1), smax = svd.singularValues()(0);
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw std::runtime_error(
        "christoffel: metric coefficient matrix is numerically singular at this point "
        "(condition number above 1e12); resample");
  Eigen::MatrixXd Ginv = G.inverse();

  std::vector<Eigen::MatrixXd> gamma(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += Ginv(k, l) * (c.at(j, l).g(i) + c.at(i, l).g(j) - c.at(i, j).g(l));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

Eigen::MatrixXd covariant_derivative_oneform(const MetricField& g, const DifferentialForm& sigma,
                                             const ChartPoint& p) {
  if (sigma.degree != 1)
    throw std::invalid_argument("covariant_derivative_oneform: degree 1 expected");
  std::vector<Eigen::MatrixXd> gamma = christoffel(g, p);
  JetMat r = sigma.coeff(p);
  int d = p.dim();
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = r.at(0, j).g(i);
      for (int k = 0; k < d; ++k) s -= gamma[k](i, j) * r.at(0, k).v;
      out(i, j) = s;
    }
  return out;
}

Eigen::VectorXd covariant_derivative_vector(const MetricField& g, const TangentVector& X,
                                            const VectorField& Z) {
  const ChartPoint& p = X.base;
  std::vector<Eigen::MatrixXd> gamma = christoffel(g, p);
  JetVec zc = Z.comp(p);
  int d = p.dim();
  Eigen::VectorXd out(d);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      s += X.comp(i) * zc[k].g(i);
      for (int j = 0; j < d; ++j) s += gamma[k](i, j) * X.comp(i) * zc[j].v;
    }
    out(k) = s;
  }
  return out;
}

std::vector<Eigen::MatrixXd> covariant_derivative_metric(const MetricField& g,
                                                         const ChartPoint& p) {
  std::vector<Eigen::MatrixXd> gamma = christoffel(g, p);
  JetMat c = g.coeff(p);
  int d = p.dim();
  std::vector<Eigen::MatrixXd> out(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = c.at(i, j).g(k);
        for (int l = 0; l < d; ++l)
          s -= gamma[l](k, i) * c.at(l, j).v + gamma[l](k, j) * c.at(i, l).v;
        out[k](i, j) = s;
      }
  return out;
}

Eigen::VectorXd three_form_from_d(const DifferentialForm& omega2, const ChartPoint& p) {
  if (omega2.degree != 2) throw std::invalid_argument("three_form_from_d: degree 2 expected");
  JetMat c = omega2.coeff(p);
  int d = p.dim();
  Eigen::VectorXd out(d * (d - 1) * (d - 2) / 6);
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        out(idx++) = (c.at(j, k).g(i) + c.at(k, i).g(j) + c.at(i, j).g(k)) / 3.0;
  return out;
}

Eigen::MatrixXd three_form_wedge_matrix(const DifferentialForm& omega2, const ChartPoint& p) {
  if (omega2.degree != 2) throw std::invalid_argument("three_form_wedge_matrix: degree 2 expected");
  Eigen::MatrixXd w = omega2.coeff(p).values();
  int d = p.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d * (d - 1) * (d - 2) / 6, d);
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        m(idx, i) += w(j, k) / 3.0;
        m(idx, j) += w(k, i) / 3.0;
        m(idx, k) += w(i, j) / 3.0;
        ++idx;
      }
  return m;
}

Eigen::VectorXd three_form_from_wedge(const Eigen::VectorXd& theta_coeffs,
                                      const DifferentialForm& omega2, const ChartPoint& p) {
  return three_form_wedge_matrix(omega2, p) * theta_coeffs;
}

ScalarField contract_form_field(const DifferentialForm& alpha, const VectorField& X) {
  if (alpha.degree != 1) throw std::invalid_argument("contract_form_field: degree 1 expected");
  require_chart(alpha.chart, X.chart, "contract_form_field");
  ScalarField out;
  out.chart = alpha.chart;
  out.eval = [alpha, X](const ChartPoint& p) {
    JetMat r = alpha.coeff(p);
    JetVec xc = X.comp(p);
    JetScalar acc = JetScalar::constant(p.dim(), 0.0);
    for (int i = 0; i < p.dim(); ++i) acc = acc + r.at(0, i) * xc[i];
    return acc;
  };
  return out;
}

}  // namespace lck
