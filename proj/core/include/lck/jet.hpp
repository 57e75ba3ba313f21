#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lck {

// Order-2 jet of a scalar quantity: value, gradient and symmetric Hessian
// with respect to the chart coordinates.  Arithmetic is exact forward-mode
// propagation; `ord` tracks how many derivative levels are still trustworthy
// (2 = Hessian valid, 1 = gradient valid, 0 = value only).  Operators that
// differentiate a jet-valued coefficient lose one level.
struct JetScalar {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
  int ord = 2;

  JetScalar() = default;

  JetScalar(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess, int order = 2)
      : v(value), g(std::move(grad)), h(std::move(hess)), ord(order) {
    if (h.rows() != g.size() || h.cols() != g.size())
      throw std::invalid_argument("JetScalar: hessian shape mismatch");
    if (ord >= 2 && (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + h.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("JetScalar: hessian not symmetric");
    h = 0.5 * (h + h.transpose().eval());
  }

  int dim() const { return static_cast<int>(g.size()); }

  static JetScalar constant(int d, double value) {
    return JetScalar(value, Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Zero(d, d));
  }

  static JetScalar variable(int d, int index, double value) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);
    grad(index) = 1.0;
    return JetScalar(value, grad, Eigen::MatrixXd::Zero(d, d));
  }

  // Jet of the i-th partial derivative; one order lower than the input.
  JetScalar derivative(int i) const {
    const int d = dim();
    JetScalar r;
    r.v = (ord >= 1) ? g(i) : 0.0;
    r.g = (ord >= 2) ? Eigen::VectorXd(h.row(i)) : Eigen::VectorXd::Zero(d);
    r.h = Eigen::MatrixXd::Zero(d, d);
    r.ord = ord - 1;
    return r;
  }

  JetScalar operator-() const {
    JetScalar r = *this;
    r.v = -r.v;
    r.g = -r.g;
    r.h = -r.h;
    return r;
  }
};

inline int jet_min_ord(const JetScalar& a, const JetScalar& b) {
  return a.ord < b.ord ? a.ord : b.ord;
}

inline JetScalar operator+(const JetScalar& a, const JetScalar& b) {
  JetScalar r;
  r.v = a.v + b.v;
  r.g = a.g + b.g;
  r.h = a.h + b.h;
  r.ord = jet_min_ord(a, b);
  return r;
}

inline JetScalar operator-(const JetScalar& a, const JetScalar& b) {
  JetScalar r;
  r.v = a.v - b.v;
  r.g = a.g - b.g;
  r.h = a.h - b.h;
  r.ord = jet_min_ord(a, b);
  return r;
}

inline JetScalar operator*(const JetScalar& a, const JetScalar& b) {
  JetScalar r;
  r.v = a.v * b.v;
  r.g = a.g * b.v + a.v * b.g;
  r.h = a.h * b.v + a.v * b.h + a.g * b.g.transpose() + b.g * a.g.transpose();
  r.ord = jet_min_ord(a, b);
  return r;
}

inline JetScalar operator+(const JetScalar& a, double c) {
  JetScalar r = a;
  r.v += c;
  return r;
}
inline JetScalar operator+(double c, const JetScalar& a) { return a + c; }
inline JetScalar operator-(const JetScalar& a, double c) { return a + (-c); }
inline JetScalar operator-(double c, const JetScalar& a) { return (-a) + c; }

inline JetScalar operator*(const JetScalar& a, double c) {
  JetScalar r = a;
  r.v *= c;
  r.g *= c;
  r.h *= c;
  return r;
}
inline JetScalar operator*(double c, const JetScalar& a) { return a * c; }
inline JetScalar operator/(const JetScalar& a, double c) { return a * (1.0 / c); }

// f(u) with f', f'' supplied: standard order-2 chain rule.
inline JetScalar jet_apply(const JetScalar& u, double f, double df, double ddf) {
  JetScalar r;
  r.v = f;
  r.g = df * u.g;
  r.h = df * u.h + ddf * u.g * u.g.transpose();
  r.ord = u.ord;
  return r;
}

inline JetScalar jet_inv(const JetScalar& u) {
  if (u.v == 0.0) throw std::domain_error("jet_inv: division by zero");
  const double iv = 1.0 / u.v;
  return jet_apply(u, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline JetScalar operator/(const JetScalar& a, const JetScalar& b) { return a * jet_inv(b); }
inline JetScalar operator/(double c, const JetScalar& b) { return jet_inv(b) * c; }

inline JetScalar jet_exp(const JetScalar& u) {
  const double e = std::exp(u.v);
  return jet_apply(u, e, e, e);
}

inline JetScalar jet_log(const JetScalar& u) {
  if (u.v <= 0.0) throw std::domain_error("jet_log: nonpositive argument");
  return jet_apply(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}

inline JetScalar jet_sqrt(const JetScalar& u) {
  if (u.v <= 0.0) throw std::domain_error("jet_sqrt: nonpositive argument");
  const double s = std::sqrt(u.v);
  return jet_apply(u, s, 0.5 / s, -0.25 / (s * u.v));
}

inline JetScalar jet_sin(const JetScalar& u) {
  return jet_apply(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v));
}

inline JetScalar jet_cos(const JetScalar& u) {
  return jet_apply(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
}

inline JetScalar jet_pow(const JetScalar& u, int k) {
  if (k == 0) return JetScalar::constant(u.dim(), 1.0);
  const double p = std::pow(u.v, k);
  const double dp = k * std::pow(u.v, k - 1);
  const double ddp = double(k) * (k - 1) * std::pow(u.v, k - 2);
  return jet_apply(u, p, dp, ddp);
}

// Composition: jet of x -> outer(target(x)) where `outer` is a jet in the
// target coordinates and `target[mu]` are the component jets of the map in
// the source coordinates.
inline JetScalar jet_chain(const JetScalar& outer, const std::vector<JetScalar>& target) {
  const int m = outer.dim();
  if (static_cast<int>(target.size()) != m)
    throw std::invalid_argument("jet_chain: component count mismatch");
  const int d = target.empty() ? 0 : target[0].dim();
  int o = outer.ord;
  for (const auto& t : target) o = std::min(o, t.ord);

  JetScalar r;
  r.v = outer.v;
  r.g = Eigen::VectorXd::Zero(d);
  r.h = Eigen::MatrixXd::Zero(d, d);
  r.ord = o;
  if (o >= 1) {
    for (int mu = 0; mu < m; ++mu) r.g += outer.g(mu) * target[mu].g;
  }
  if (o >= 2) {
    for (int mu = 0; mu < m; ++mu) r.h += outer.g(mu) * target[mu].h;
    for (int mu = 0; mu < m; ++mu)
      for (int nu = 0; nu < m; ++nu)
        r.h += outer.h(mu, nu) * target[mu].g * target[nu].g.transpose();
  }
  return r;
}

using JetVec = std::vector<JetScalar>;

// Dot product of jet component lists (used for frame pairings).
inline JetScalar jet_dot(const JetVec& a, const JetVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("jet_dot: size mismatch");
  JetScalar acc = JetScalar::constant(a.empty() ? 0 : a[0].dim(), 0.0);
  for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

}  // namespace lck
