#include "lck/chart.hpp"

namespace lck {

ChartPoint make_cylinder_point(double t, const Eigen::VectorXd& w) {
  ChartPoint p;
  p.chart = ChartId::CYLINDER;
  p.x.resize(w.size() + 1);
  p.x(0) = t;
  p.x.tail(w.size()) = w;
  validate_point(p);
  return p;
}

ChartPoint make_punctured_point(const Eigen::VectorXd& q) {
  ChartPoint p;
  p.chart = ChartId::PUNCTURED_CN;
  p.x = q;
  validate_point(p);
  return p;
}

void validate_point(const ChartPoint& p) {
  if (p.chart == ChartId::CYLINDER) {
    if (p.dim() < 5 || p.dim() % 2 == 0)
      throw std::invalid_argument("ChartPoint: cylinder needs odd dimension 2n+1, n >= 2");
    const double r = p.x.tail(p.dim() - 1).norm();
    if (std::abs(r - 1.0) > 1e-12)
      throw std::invalid_argument("ChartPoint: sphere factor not on |w| = 1");
  } else {
    if (p.dim() < 4 || p.dim() % 2 != 0)
      throw std::invalid_argument("ChartPoint: punctured chart needs even dimension 2n, n >= 2");
    if (p.x.norm() == 0.0)
      throw std::invalid_argument("ChartPoint: punctured chart excludes the origin");
  }
}

TangentVector make_tangent(const ChartPoint& base, const Eigen::VectorXd& comp) {
  TangentVector v;
  v.base = base;
  v.comp = comp;
  validate_tangent(v);
  return v;
}

void validate_tangent(const TangentVector& v) {
  if (v.dim() != v.base.dim())
    throw std::invalid_argument("TangentVector: component count != chart dimension");
  if (v.base.chart == ChartId::CYLINDER) {
    const Eigen::VectorXd w = v.base.w();
    const Eigen::VectorXd vw = v.comp.tail(v.dim() - 1);
    const double scale = 1.0 + vw.norm();
    if (std::abs(vw.dot(w)) > 1e-10 * scale)
      throw std::invalid_argument("TangentVector: sphere part not tangent (<comp_w, w> != 0)");
  }
}

Eigen::VectorXd project_sphere_tangent(const Eigen::VectorXd& w, const Eigen::VectorXd& comp) {
  const double r2 = w.squaredNorm();
  return comp - (comp.dot(w) / r2) * w;
}

JetVec jets_at(const ChartPoint& p) {
  JetVec out;
  out.reserve(p.dim());
  for (int i = 0; i < p.dim(); ++i) out.push_back(JetScalar::variable(p.dim(), i, p.x(i)));
  return out;
}

}  // namespace lck
