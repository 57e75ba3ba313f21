#include "lck/fields.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace lck {

JetMat jet_mat_inverse(const JetMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("jet_mat_inverse: square matrix expected");
  const int d = m.rows;
  const int jd = m.a.empty() ? 0 : m.a[0].dim();
  Eigen::MatrixXd G = m.values();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible()) throw std::runtime_error("jet_mat_inverse: singular matrix");
  Eigen::MatrixXd Gi = lu.inverse();

  int ord = 2;
  for (const JetScalar& e : m.a) ord = std::min(ord, e.ord);
  ord = std::min(ord, 1);

  JetMat out(d, d, jd);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      JetScalar e = JetScalar::constant(jd, Gi(i, j));
      e.ord = ord;
      out.at(i, j) = e;
    }
  if (ord >= 1) {
    for (int k = 0; k < jd; ++k) {
      Eigen::MatrixXd dG(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) dG(i, j) = m.at(i, j).g(k);
      Eigen::MatrixXd dGi = -Gi * dG * Gi;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.at(i, j).g(k) = dGi(i, j);
    }
  }
  return out;
}

VectorField projected_constant_field(int dim, const Eigen::VectorXd& seed) {
  if (seed.size() != dim) throw std::invalid_argument("projected_constant_field: seed length");
  VectorField f;
  f.chart = ChartId::CYLINDER;
  f.comp = [dim, seed](const ChartPoint& p) {
    if (p.chart != ChartId::CYLINDER)
      throw std::invalid_argument("projected_constant_field: cylinder point expected");
    JetVec x = jets_at(p);
    int m = dim - 1;  // ambient sphere components
    // |w|^2 and <seed_w, w> as jets
    JetScalar n2 = JetScalar::constant(dim, 0.0);
    JetScalar dot = JetScalar::constant(dim, 0.0);
    for (int i = 0; i < m; ++i) {
      n2 = n2 + x[1 + i] * x[1 + i];
      dot = dot + x[1 + i] * seed(1 + i);
    }
    JetScalar scale = dot / n2;
    JetVec out(dim, JetScalar::constant(dim, 0.0));
    out[0] = JetScalar::constant(dim, seed(0));
    for (int i = 0; i < m; ++i)
      out[1 + i] = JetScalar::constant(dim, seed(1 + i)) - scale * x[1 + i];
    return out;
  };
  return f;
}

VectorField modulated_field(ChartId chart, int dim, const Eigen::VectorXd& seed,
                            const Eigen::VectorXd& modulation) {
  if (seed.size() != dim || modulation.size() != dim)
    throw std::invalid_argument("modulated_field: parameter lengths");
  VectorField f;
  f.chart = chart;
  VectorField base;
  if (chart == ChartId::CYLINDER) base = projected_constant_field(dim, seed);
  f.comp = [chart, dim, seed, modulation, base](const ChartPoint& p) {
    JetVec x = jets_at(p);
    // amplitude = 1 + sin(<modulation, x>), a generic bounded smooth factor
    JetScalar phase = JetScalar::constant(dim, 0.0);
    for (int i = 0; i < dim; ++i) phase = phase + x[i] * modulation(i);
    JetScalar amp = JetScalar::constant(dim, 1.0) + jet_sin(phase);
    // On the cylinder the direction is projected to each sphere leaf so the
    // field stays bracket safe; on the punctured chart it is the raw seed.
    JetVec dir;
    if (chart == ChartId::CYLINDER) {
      dir = base.comp(p);
    } else {
      dir.assign(dim, JetScalar::constant(dim, 0.0));
      for (int i = 0; i < dim; ++i) dir[i] = JetScalar::constant(dim, seed(i));
    }
    JetVec out;
    out.reserve(dim);
    for (int i = 0; i < dim; ++i) out.push_back(amp * dir[i]);
    return out;
  };
  return f;
}

}  // namespace lck
