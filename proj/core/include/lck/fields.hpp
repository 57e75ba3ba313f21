#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "lck/chart.hpp"
#include "lck/jet.hpp"

namespace lck {

// Dense matrix of jets (small sizes only; chart dimension <= 7 in practice).
struct JetMat {
  int rows = 0, cols = 0;
  std::vector<JetScalar> a;

  JetMat() = default;
  JetMat(int r, int c, int jet_dim) : rows(r), cols(c), a(r * c, JetScalar::constant(jet_dim, 0.0)) {}

  JetScalar& at(int i, int j) { return a[i * cols + j]; }
  const JetScalar& at(int i, int j) const { return a[i * cols + j]; }

  Eigen::MatrixXd values() const {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = at(i, j).v;
    return m;
  }
};

struct ScalarField {
  ChartId chart = ChartId::PUNCTURED_CN;
  std::function<JetScalar(const ChartPoint&)> eval;

  double value(const ChartPoint& p) const { return eval(p).v; }
};

struct VectorField {
  ChartId chart = ChartId::PUNCTURED_CN;
  std::function<JetVec(const ChartPoint&)> comp;

  Eigen::VectorXd values(const ChartPoint& p) const {
    JetVec c = comp(p);
    Eigen::VectorXd v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v(i) = c[i].v;
    return v;
  }
  TangentVector at(const ChartPoint& p) const { return make_tangent(p, values(p)); }
};

// Differential form of degree 0, 1 or 2, stored through its coordinate
// components: degree 1 as the row of coefficients, degree 2 as the full
// antisymmetric matrix C_ij = alpha(e_i, e_j).
struct DifferentialForm {
  ChartId chart = ChartId::PUNCTURED_CN;
  int degree = 1;
  std::function<JetMat(const ChartPoint&)> coeff;

  double evaluate(const ChartPoint& p) const {
    if (degree != 0) throw std::logic_error("form: wrong arity");
    return coeff(p).at(0, 0).v;
  }
  double evaluate(const ChartPoint& p, const Eigen::VectorXd& X) const {
    if (degree != 1) throw std::logic_error("form: wrong arity");
    JetMat c = coeff(p);
    double s = 0.0;
    for (int i = 0; i < c.cols; ++i) s += c.at(0, i).v * X(i);
    return s;
  }
  double evaluate(const ChartPoint& p, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
    if (degree != 2) throw std::logic_error("form: wrong arity");
    return X.dot(coeff(p).values() * Y);
  }
  double evaluate(const ChartPoint& p, const TangentVector& X) const { return evaluate(p, X.comp); }
  double evaluate(const ChartPoint& p, const TangentVector& X, const TangentVector& Y) const {
    return evaluate(p, X.comp, Y.comp);
  }
};

// Symmetric (0,2)-tensor field through its coefficient matrix.
struct MetricField {
  ChartId chart = ChartId::PUNCTURED_CN;
  std::function<JetMat(const ChartPoint&)> coeff;

  double evaluate(const ChartPoint& p, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) const {
    return X.dot(coeff(p).values() * Y);
  }
  double evaluate(const ChartPoint& p, const TangentVector& X, const TangentVector& Y) const {
    return evaluate(p, X.comp, Y.comp);
  }
  Eigen::MatrixXd matrix(const ChartPoint& p) const { return coeff(p).values(); }
};

// (1,1)-tensor field: pointwise endomorphism of the tangent space, stored as
// the matrix acting on coordinate components.
struct ComplexStructureField {
  ChartId chart = ChartId::PUNCTURED_CN;
  std::function<JetMat(const ChartPoint&)> mat;

  Eigen::VectorXd apply(const ChartPoint& p, const Eigen::VectorXd& X) const {
    return mat(p).values() * X;
  }
  TangentVector apply(const TangentVector& v) const {
    return make_tangent(v.base, apply(v.base, v.comp));
  }
  JetVec apply_jets(const ChartPoint& p, const JetVec& X) const {
    JetMat m = mat(p);
    JetVec out;
    out.reserve(m.rows);
    for (int i = 0; i < m.rows; ++i) {
      JetScalar acc = JetScalar::constant(X.empty() ? 0 : X[0].dim(), 0.0);
      for (int j = 0; j < m.cols; ++j) acc = acc + m.at(i, j) * X[j];
      out.push_back(acc);
    }
    return out;
  }
  VectorField apply_field(const VectorField& X) const {
    ComplexStructureField J = *this;
    VectorField JX;
    JX.chart = X.chart;
    JX.comp = [J, X](const ChartPoint& p) { return J.apply_jets(p, X.comp(p)); };
    return JX;
  }
};

// Inverse of a square jet matrix, correct through first derivative slots:
// d(G^-1) = -G^-1 (dG) G^-1. Hessian slots are dropped (ord capped at 1).
JetMat jet_mat_inverse(const JetMat& m);

inline VectorField coordinate_field(ChartId chart, int dim, int index) {
  VectorField f;
  f.chart = chart;
  f.comp = [dim, index](const ChartPoint&) {
    JetVec c(dim, JetScalar::constant(dim, 0.0));
    c[index] = JetScalar::constant(dim, 1.0);
    return c;
  };
  return f;
}

// Cylinder field with seed components (t-part, ambient sphere part); the
// sphere part is projected to the sphere tangent at every radius, so the
// field is tangent to each leaf |w| = r and safe to bracket.
VectorField projected_constant_field(int dim, const Eigen::VectorXd& seed);

// Field whose components are fixed polynomials-in-coordinates times the seed
// directions; used to generate generic smooth test fields deterministically.
VectorField modulated_field(ChartId chart, int dim, const Eigen::VectorXd& seed,
                            const Eigen::VectorXd& modulation);

}  // namespace lck
