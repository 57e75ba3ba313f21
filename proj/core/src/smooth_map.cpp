#include "lck/smooth_map.hpp"

#include <cmath>
#include <stdexcept>

namespace lck {

ChartPoint SmoothMap::apply(const ChartPoint& p) const {
  if (p.chart != source) throw std::invalid_argument("SmoothMap: point is on the wrong chart");
  JetVec out = components(p);
  Eigen::VectorXd x(out.size());
  for (size_t i = 0; i < out.size(); ++i) x(i) = out[i].v;
  ChartPoint q;
  q.chart = target;
  q.x = x;
  validate_point(q);
  return q;
}

Eigen::MatrixXd SmoothMap::jacobian(const ChartPoint& p) const {
  if (p.chart != source) throw std::invalid_argument("SmoothMap: point is on the wrong chart");
  JetVec out = components(p);
  Eigen::MatrixXd m(out.size(), p.dim());
  for (size_t i = 0; i < out.size(); ++i) m.row(i) = out[i].g.transpose();
  return m;
}

TangentVector SmoothMap::pushforward(const TangentVector& v) const {
  Eigen::VectorXd image = jacobian(v.base) * v.comp;
  ChartPoint q = apply(v.base);
  if (q.chart == ChartId::CYLINDER) {
    // The differential of a map into the cylinder lands tangent to the unit
    // sphere automatically; clean up roundoff so validation stays strict.
    Eigen::VectorXd w = q.w();
    Eigen::VectorXd sph = image.tail(image.size() - 1);
    image.tail(image.size() - 1) = project_sphere_tangent(w, sph);
  }
  return make_tangent(q, image);
}

SmoothMap compose(const SmoothMap& g, const SmoothMap& f) {
  if (f.target != g.source) throw std::invalid_argument("compose: chart mismatch");
  SmoothMap h;
  h.source = f.source;
  h.target = g.target;
  h.components = [g, f](const ChartPoint& p) {
    JetVec inner = f.components(p);
    ChartPoint mid = f.apply(p);
    JetVec outer = g.components(mid);
    JetVec out;
    out.reserve(outer.size());
    for (const JetScalar& c : outer) out.push_back(jet_chain(c, inner));
    return out;
  };
  return h;
}

SmoothMap map_H(const HopfData& data) {
  SmoothMap H;
  H.source = ChartId::CYLINDER;
  H.target = ChartId::PUNCTURED_CN;
  H.components = [data](const ChartPoint& p) {
    if (p.chart != ChartId::CYLINDER) throw std::invalid_argument("map_H: cylinder point expected");
    JetVec in = jets_at(p);
    JetVec out;
    out.reserve(p.dim() - 1);
    for (int j = 0; j < data.n; ++j) {
      JetScalar scale = jet_exp(in[0] * (-data.a(j)));
      out.push_back(scale * in[1 + 2 * j]);
      out.push_back(scale * in[2 + 2 * j]);
    }
    return out;
  };
  return H;
}

double solve_cylinder_time(const HopfData& data, const Eigen::VectorXd& q) {
  const int n = data.n;
  auto F = [&](double t) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      double r2 = q(2 * j) * q(2 * j) + q(2 * j + 1) * q(2 * j + 1);
      s += std::exp(2.0 * data.a(j) * t) * r2;
    }
    return s - 1.0;
  };
  auto Ft = [&](double t) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      double r2 = q(2 * j) * q(2 * j) + q(2 * j + 1) * q(2 * j + 1);
      s += 2.0 * data.a(j) * std::exp(2.0 * data.a(j) * t) * r2;
    }
    return s;
  };

  // Bracket the root. F is strictly increasing with F -> -1 as t -> -inf.
  double lo = 0.0, hi = 0.0;
  if (F(0.0) < 0.0) {
    hi = 1.0;
    while (F(hi) < 0.0) hi *= 2.0;
    lo = 0.0;
  } else {
    lo = -1.0;
    while (F(lo) > 0.0) lo *= 2.0;
    hi = 0.0;
  }

  double t = 0.5 * (lo + hi);
  int iters = 0;
  for (; iters < 200; ++iters) {
    double f = F(t);
    if (std::abs(f) < 1e-14) break;
    double step = f / Ft(t);
    double tn = t - step;
    if (tn <= lo || tn >= hi) {
      // Newton left the bracket; fall back to bisection for this step.
      if (f > 0.0)
        hi = t;
      else
        lo = t;
      tn = 0.5 * (lo + hi);
    } else {
      if (f > 0.0)
        hi = t;
      else
        lo = t;
    }
    if (std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t))) {
      t = tn;
      break;
    }
    t = tn;
  }
  if (std::abs(F(t)) > 1e-12)
    throw std::runtime_error("solve_cylinder_time: root finder did not converge");
  return t;
}

SmoothMap map_H_inverse(const HopfData& data) {
  SmoothMap Hinv;
  Hinv.source = ChartId::PUNCTURED_CN;
  Hinv.target = ChartId::CYLINDER;
  Hinv.components = [data](const ChartPoint& p) {
    if (p.chart != ChartId::PUNCTURED_CN)
      throw std::invalid_argument("map_H_inverse: punctured chart point expected");
    const int n = data.n;
    const int dim = 2 * n;
    const Eigen::VectorXd& q = p.x;
    double t = solve_cylinder_time(data, q);

    // First and second derivatives of the implicit t(q).
    // F(t, q) = sum e^{2 a_j t} (q_x^2 + q_y^2) - 1.
    Eigen::VectorXd Fq(dim);
    Eigen::MatrixXd Fqq = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd Fqt(dim);
    double Ft = 0.0, Ftt = 0.0;
    for (int j = 0; j < n; ++j) {
      double e = std::exp(2.0 * data.a(j) * t);
      double r2 = q(2 * j) * q(2 * j) + q(2 * j + 1) * q(2 * j + 1);
      Ft += 2.0 * data.a(j) * e * r2;
      Ftt += 4.0 * data.a(j) * data.a(j) * e * r2;
      for (int k = 0; k < 2; ++k) {
        int idx = 2 * j + k;
        Fq(idx) = 2.0 * e * q(idx);
        Fqq(idx, idx) = 2.0 * e;
        Fqt(idx) = 4.0 * data.a(j) * e * q(idx);
      }
    }
    Eigen::VectorXd tg = -Fq / Ft;
    Eigen::MatrixXd th(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j2 = 0; j2 < dim; ++j2)
        th(i, j2) = -(Fqq(i, j2) + Fqt(i) * tg(j2) + Fqt(j2) * tg(i) + Ftt * tg(i) * tg(j2)) / Ft;

    JetScalar tj(t, tg, 0.5 * (th + th.transpose()));
    JetVec in = jets_at(p);
    JetVec out;
    out.reserve(dim + 1);
    out.push_back(tj);
    for (int j = 0; j < n; ++j) {
      JetScalar scale = jet_exp(tj * data.a(j));
      out.push_back(scale * in[2 * j]);
      out.push_back(scale * in[2 * j + 1]);
    }
    return out;
  };
  return Hinv;
}

}  // namespace lck
