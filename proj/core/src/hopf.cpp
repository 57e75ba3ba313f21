#include "lck/hopf.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace lck {

namespace {

// Jets of the sphere-part coordinates of a cylinder point: slots 1..2n of the
// chart, kept in full (2n+1)-dimensional jet space.
struct CylinderJets {
  JetVec x;       // all coordinates, x[0] = t
  int n = 0;      // complex dimension
  int dim() const { return 2 * n + 1; }

  JetScalar S_a(const Eigen::VectorXd& a) const {
    JetScalar s = JetScalar::constant(dim(), 0.0);
    for (int j = 0; j < n; ++j)
      s = s + (x[1 + 2 * j] * x[1 + 2 * j] + x[2 + 2 * j] * x[2 + 2 * j]) * a(j);
    return s;
  }
  JetScalar norm2() const {
    JetScalar s = JetScalar::constant(dim(), 0.0);
    for (int i = 1; i < dim(); ++i) s = s + x[i] * x[i];
    return s;
  }
  // eta0 row over the full chart frame, dt slot zero.
  JetVec eta0_row() const {
    JetVec r(dim(), JetScalar::constant(dim(), 0.0));
    for (int j = 0; j < n; ++j) {
      r[1 + 2 * j] = -x[2 + 2 * j];
      r[2 + 2 * j] = x[1 + 2 * j];
    }
    return r;
  }
  JetVec field_A(const Eigen::VectorXd& a) const {
    JetVec r(dim(), JetScalar::constant(dim(), 0.0));
    for (int j = 0; j < n; ++j) {
      r[1 + 2 * j] = -x[2 + 2 * j] * a(j);
      r[2 + 2 * j] = x[1 + 2 * j] * a(j);
    }
    return r;
  }
};

CylinderJets cylinder_jets(const ChartPoint& p) {
  if (p.chart != ChartId::CYLINDER)
    throw std::invalid_argument("hopf: cylinder chart point expected");
  CylinderJets c;
  c.x = jets_at(p);
  c.n = p.n();
  return c;
}

// Antisymmetric spatial components of d etaA over the cylinder frame, the
// closed-form counterpart of one exterior derivative of etaA.
void d_etaA_block(const CylinderJets& c, const Eigen::VectorXd& a, JetMat& out) {
  int d = c.dim();
  JetScalar S = c.S_a(a);
  JetScalar Sinv = jet_inv(S);
  JetScalar S2inv = Sinv * Sinv;
  JetVec eta = c.eta0_row();
  // dS row
  JetVec dS(d, JetScalar::constant(d, 0.0));
  for (int j = 0; j < c.n; ++j) {
    dS[1 + 2 * j] = c.x[1 + 2 * j] * (2.0 * a(j));
    dS[2 + 2 * j] = c.x[2 + 2 * j] * (2.0 * a(j));
  }
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j) {
      double deta0 = 0.0;  // constant matrix: +1 on (x_k, y_k), -1 on (y_k, x_k)
      if (j == i + 1 && (i % 2) == 1) deta0 = 1.0;
      if (i == j + 1 && (j % 2) == 1) deta0 = -1.0;
      JetScalar v = Sinv * deta0 - S2inv * (dS[i] * eta[j] - dS[j] * eta[i]) * 0.5;
      out.at(i, j) = v;
    }
  for (int i = 0; i < d; ++i) {
    out.at(0, i) = JetScalar::constant(d, 0.0);
    out.at(i, 0) = JetScalar::constant(d, 0.0);
  }
}

JetVec etaA_row(const CylinderJets& c, const Eigen::VectorXd& a) {
  JetScalar Sinv = jet_inv(c.S_a(a));
  JetVec r = c.eta0_row();
  for (JetScalar& e : r) e = e * Sinv;
  return r;
}

}  // namespace

DifferentialForm build_eta0(int n) {
  DifferentialForm f;
  f.chart = ChartId::CYLINDER;
  f.degree = 1;
  f.coeff = [n](const ChartPoint& p) {
    CylinderJets c = cylinder_jets(p);
    if (c.n != n) throw std::invalid_argument("eta0: dimension mismatch");
    JetVec r = c.eta0_row();
    JetMat m(1, c.dim(), c.dim());
    for (int i = 0; i < c.dim(); ++i) m.at(0, i) = r[i];
    return m;
  };
  return f;
}

DifferentialForm build_etaA(const HopfData& data) {
  DifferentialForm f;
  f.chart = ChartId::CYLINDER;
  f.degree = 1;
  Eigen::VectorXd a = data.a;
  f.coeff = [a](const ChartPoint& p) {
    CylinderJets c = cylinder_jets(p);
    JetVec r = etaA_row(c, a);
    JetMat m(1, c.dim(), c.dim());
    for (int i = 0; i < c.dim(); ++i) m.at(0, i) = r[i];
    return m;
  };
  return f;
}

VectorField build_field_A(const HopfData& data) {
  VectorField f;
  f.chart = ChartId::CYLINDER;
  Eigen::VectorXd a = data.a;
  f.comp = [a](const ChartPoint& p) { return cylinder_jets(p).field_A(a); };
  return f;
}

VectorField build_field_N(int n) {
  return coordinate_field(ChartId::CYLINDER, 2 * n + 1, 0);
}

ComplexStructureField build_JA(const HopfData& data) {
  ComplexStructureField J;
  J.chart = ChartId::CYLINDER;
  Eigen::VectorXd a = data.a;
  J.mat = [a](const ChartPoint& p) {
    CylinderJets c = cylinder_jets(p);
    int d = c.dim();
    JetVec eta = etaA_row(c, a);
    JetVec A = c.field_A(a);
    JetScalar n2inv = jet_inv(c.norm2());
    JetMat m(d, d, d);

    // column for d/dt: J N = -A
    for (int r = 1; r < d; ++r) m.at(r, 0) = -A[r];
    m.at(0, 0) = JetScalar::constant(d, 0.0);

    for (int col = 1; col < d; ++col) {
      // tangential part of the ambient frame vector
      JetScalar radial = c.x[col] * n2inv;
      JetVec vtan(d, JetScalar::constant(d, 0.0));
      for (int r = 1; r < d; ++r) {
        vtan[r] = -radial * c.x[r];
        if (r == col) vtan[r] = vtan[r] + 1.0;
      }
      JetScalar alpha = JetScalar::constant(d, 0.0);
      for (int r = 1; r < d; ++r) alpha = alpha + eta[r] * vtan[r];
      // horizontal part, then J0 on it; J(A-part) feeds d/dt
      m.at(0, col) = alpha;
      for (int j2 = 0; 2 * j2 + 2 < d; ++j2) {
        JetScalar hx = vtan[1 + 2 * j2] - alpha * A[1 + 2 * j2];
        JetScalar hy = vtan[2 + 2 * j2] - alpha * A[2 + 2 * j2];
        m.at(1 + 2 * j2, col) = -hy;
        m.at(2 + 2 * j2, col) = hx;
      }
    }
    return m;
  };
  return J;
}

ComplexStructureField build_J0(int n) {
  ComplexStructureField J;
  J.chart = ChartId::PUNCTURED_CN;
  J.mat = [n](const ChartPoint& p) {
    if (p.chart != ChartId::PUNCTURED_CN)
      throw std::invalid_argument("J0: punctured chart point expected");
    int d = 2 * n;
    JetMat m(d, d, d);
    for (int j = 0; j < n; ++j) {
      m.at(2 * j, 2 * j + 1) = JetScalar::constant(d, -1.0);
      m.at(2 * j + 1, 2 * j) = JetScalar::constant(d, 1.0);
    }
    return m;
  };
  return J;
}

HopfStructure build_hopf_structure(const HopfData& data) {
  validate_hopf_data(data);
  HopfStructure hs;
  hs.data = data;
  const int n = data.n;
  const Eigen::VectorXd a = data.a;

  hs.eta0 = build_eta0(n);
  hs.etaA = build_etaA(data);
  hs.A = build_field_A(data);
  hs.N = build_field_N(n);
  hs.xi = hs.N;
  hs.JA = build_JA(data);

  hs.OmegaA.chart = ChartId::CYLINDER;
  hs.OmegaA.degree = 2;
  hs.OmegaA.coeff = [a](const ChartPoint& p) {
    CylinderJets c = cylinder_jets(p);
    int d = c.dim();
    JetMat m(d, d, d);
    d_etaA_block(c, a, m);
    JetScalar et = jet_exp(c.x[0]);
    JetVec eta = etaA_row(c, a);
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) m.at(i, j) = m.at(i, j) * et * 2.0;
    for (int i = 1; i < d; ++i) {
      m.at(0, i) = et * eta[i];
      m.at(i, 0) = -m.at(0, i);
    }
    m.at(0, 0) = JetScalar::constant(d, 0.0);
    return m;
  };

  hs.omega_tilde.chart = ChartId::CYLINDER;
  hs.omega_tilde.degree = 2;
  hs.omega_tilde.coeff = [a](const ChartPoint& p) {
    CylinderJets c = cylinder_jets(p);
    int d = c.dim();
    JetMat m(d, d, d);
    d_etaA_block(c, a, m);
    JetVec eta = etaA_row(c, a);
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) m.at(i, j) = m.at(i, j) * 4.0;
    for (int i = 1; i < d; ++i) {
      m.at(0, i) = eta[i] * 2.0;
      m.at(i, 0) = -m.at(0, i);
    }
    m.at(0, 0) = JetScalar::constant(d, 0.0);
    return m;
  };

  ComplexStructureField JA = hs.JA;
  DifferentialForm omt = hs.omega_tilde;
  hs.g_tilde.chart = ChartId::CYLINDER;
  hs.g_tilde.coeff = [JA, omt](const ChartPoint& p) {
    // omega_tilde(J Pi e_i, Pi e_j): J's matrix already carries the tangency
    // projection, the second slot gets projected explicitly.
    CylinderJets c = cylinder_jets(p);
    int d = c.dim();
    JetMat W = omt.coeff(p);
    JetMat MJ = JA.mat(p);
    JetScalar n2inv = jet_inv(c.norm2());
    // projector matrix
    JetMat P(d, d, d);
    P.at(0, 0) = JetScalar::constant(d, 1.0);
    for (int i = 1; i < d; ++i)
      for (int j = 1; j < d; ++j) {
        P.at(i, j) = -(c.x[i] * c.x[j] * n2inv);
        if (i == j) P.at(i, j) = P.at(i, j) + 1.0;
      }
    // C = MJ^T W P
    JetMat WP(d, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        JetScalar acc = JetScalar::constant(d, 0.0);
        for (int k = 0; k < d; ++k) acc = acc + W.at(i, k) * P.at(k, j);
        WP.at(i, j) = acc;
      }
    JetMat C(d, d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        JetScalar acc = JetScalar::constant(d, 0.0);
        for (int k = 0; k < d; ++k) acc = acc + MJ.at(k, i) * WP.at(k, j);
        C.at(i, j) = acc;
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j) {
        JetScalar sym = (C.at(i, j) + C.at(j, i)) * 0.5;
        C.at(i, j) = sym;
        C.at(j, i) = sym;
      }
    return C;
  };

  hs.theta.chart = ChartId::CYLINDER;
  hs.theta.degree = 1;
  hs.theta.coeff = [n](const ChartPoint& p) {
    int d = 2 * n + 1;
    if (p.dim() != d) throw std::invalid_argument("theta: dimension mismatch");
    JetMat m(1, d, d);
    m.at(0, 0) = JetScalar::constant(d, -1.0);
    return m;
  };

  hs.J0 = build_J0(n);
  hs.H = map_H(data);
  hs.Hinv = map_H_inverse(data);
  hs.g_bar = pullback_metric(hs.Hinv, hs.g_tilde);
  hs.omega_bar = pullback(hs.Hinv, hs.omega_tilde);
  hs.theta_bar = pullback(hs.Hinv, hs.theta);
  return hs;
}

DeckGroupElement flow_element(double s) {
  DeckGroupElement e;
  e.kind = DeckGroupElement::Kind::FLOW;
  e.s = s;
  return e;
}

DeckGroupElement torus_element(const Eigen::VectorXd& angles) {
  DeckGroupElement e;
  e.kind = DeckGroupElement::Kind::TORUS;
  e.angles = angles;
  return e;
}

DeckGroupElement torus_weighted(const HopfData& data, double t) {
  return torus_element(data.a * t);
}

DeckGroupElement deck_element(int k) {
  DeckGroupElement e;
  e.kind = DeckGroupElement::Kind::DECK;
  e.k = k;
  return e;
}

DeckGroupElement unitary_element(const Eigen::MatrixXd& U) {
  int d = U.rows();
  if (U.cols() != d || d % 2 != 0) throw std::invalid_argument("unitary_element: 2n x 2n expected");
  Eigen::MatrixXd J0 = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; 2 * j + 1 < d; ++j) {
    J0(2 * j, 2 * j + 1) = -1.0;
    J0(2 * j + 1, 2 * j) = 1.0;
  }
  if ((U.transpose() * U - Eigen::MatrixXd::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("unitary_element: matrix is not orthogonal");
  if ((U * J0 - J0 * U).norm() > 1e-10)
    throw std::invalid_argument("unitary_element: matrix does not commute with J0");
  DeckGroupElement e;
  e.kind = DeckGroupElement::Kind::UNITARY;
  e.U = U;
  return e;
}

namespace {

SmoothMap linear_block_map(ChartId chart, int n, int offset,
                           const std::vector<Eigen::Matrix2d>& blocks, double t_shift) {
  SmoothMap f;
  f.source = chart;
  f.target = chart;
  f.components = [chart, n, offset, blocks, t_shift](const ChartPoint& p) {
    if (p.chart != chart) throw std::invalid_argument("group action: wrong chart");
    JetVec x = jets_at(p);
    JetVec out = x;
    if (offset == 1) out[0] = x[0] + t_shift;
    for (int j = 0; j < n; ++j) {
      const Eigen::Matrix2d& B = blocks[j];
      JetScalar u = x[offset + 2 * j], v = x[offset + 2 * j + 1];
      out[offset + 2 * j] = u * B(0, 0) + v * B(0, 1);
      out[offset + 2 * j + 1] = u * B(1, 0) + v * B(1, 1);
    }
    return out;
  };
  return f;
}

Eigen::Matrix2d rotation_block(double c, double s) {
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

}  // namespace

SmoothMap group_action_map(const HopfData& data, const DeckGroupElement& el) {
  const int n = data.n;
  switch (el.kind) {
    case DeckGroupElement::Kind::FLOW: {
      std::vector<Eigen::Matrix2d> blocks(n, Eigen::Matrix2d::Identity());
      return linear_block_map(ChartId::CYLINDER, n, 1, blocks, el.s);
    }
    case DeckGroupElement::Kind::TORUS: {
      if (el.angles.size() != n) throw std::invalid_argument("torus element: angle count");
      std::vector<Eigen::Matrix2d> blocks;
      for (int j = 0; j < n; ++j)
        blocks.push_back(rotation_block(std::cos(el.angles(j)), std::sin(el.angles(j))));
      return linear_block_map(ChartId::CYLINDER, n, 1, blocks, 0.0);
    }
    case DeckGroupElement::Kind::DECK: {
      std::vector<Eigen::Matrix2d> blocks;
      for (int j = 0; j < n; ++j) {
        std::complex<double> lk = std::pow(data.lambda()[j], el.k);
        Eigen::Matrix2d m;
        m << lk.real(), -lk.imag(), lk.imag(), lk.real();
        blocks.push_back(m);
      }
      return linear_block_map(ChartId::PUNCTURED_CN, n, 0, blocks, 0.0);
    }
    case DeckGroupElement::Kind::UNITARY: {
      Eigen::MatrixXd U = el.U;
      if (U.rows() != 2 * n) throw std::invalid_argument("unitary element: dimension mismatch");
      SmoothMap f;
      f.source = ChartId::CYLINDER;
      f.target = ChartId::CYLINDER;
      f.components = [U, n](const ChartPoint& p) {
        if (p.chart != ChartId::CYLINDER) throw std::invalid_argument("group action: wrong chart");
        JetVec x = jets_at(p);
        JetVec out = x;
        for (int r = 0; r < 2 * n; ++r) {
          JetScalar acc = JetScalar::constant(p.dim(), 0.0);
          for (int c = 0; c < 2 * n; ++c) acc = acc + x[1 + c] * U(r, c);
          out[1 + r] = acc;
        }
        return out;
      };
      return f;
    }
  }
  throw std::logic_error("group_action_map: unknown element kind");
}

ChartPoint group_action(const HopfData& data, const DeckGroupElement& el, const ChartPoint& p) {
  return group_action_map(data, el).apply(p);
}

Eigen::VectorXcd conjugated_diagonal(const HopfData& data, double s, const Eigen::VectorXd& angles) {
  Eigen::VectorXcd d(data.n);
  for (int j = 0; j < data.n; ++j)
    d(j) = std::exp(std::complex<double>(-data.a(j) * s, angles(j)));
  return d;
}

ScalarField rescale_s_function(const DifferentialForm& Omega, const VectorField& xi,
                               const ComplexStructureField& J) {
  ScalarField s;
  s.chart = Omega.chart;
  s.eval = [Omega, xi, J](const ChartPoint& p) {
    JetMat W = Omega.coeff(p);
    JetVec x = xi.comp(p);
    JetVec Jx = J.apply_jets(p, x);
    JetScalar acc = JetScalar::constant(p.dim(), 0.0);
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < p.dim(); ++j) acc = acc + Jx[i] * W.at(i, j) * x[j];
    if (!(acc.v > 0.0))
      throw std::runtime_error(
          "theorem_A_rescale: s(x) <= 0 at an evaluation point; the rescaling "
          "hypothesis fails here");
    return acc;
  };
  return s;
}

std::pair<DifferentialForm, DifferentialForm> theorem_A_rescale(const DifferentialForm& Omega,
                                                                const VectorField& xi,
                                                                const ComplexStructureField& J) {
  if (Omega.degree != 2) throw std::invalid_argument("theorem_A_rescale: 2-form expected");
  ScalarField s = rescale_s_function(Omega, xi, J);

  DifferentialForm Theta;
  Theta.chart = Omega.chart;
  Theta.degree = 2;
  Theta.coeff = [Omega, s](const ChartPoint& p) {
    JetMat W = Omega.coeff(p);
    JetScalar f = jet_inv(s.eval(p)) * 2.0;
    for (JetScalar& e : W.a) e = e * f;
    return W;
  };

  DifferentialForm lee;
  lee.chart = Omega.chart;
  lee.degree = 1;
  lee.coeff = [s](const ChartPoint& p) {
    JetScalar v = s.eval(p);
    JetScalar vinv = jet_inv(v);
    int d = p.dim();
    JetMat m(1, d, d);
    for (int i = 0; i < d; ++i) m.at(0, i) = -(v.derivative(i) * vinv);
    return m;
  };
  return {Theta, lee};
}

}  // namespace lck
