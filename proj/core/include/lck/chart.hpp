#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "lck/jet.hpp"

namespace lck {

// The two coordinate models in play:
//   CYLINDER     coordinates (t, w_1, ..., w_2n) with the sphere factor held
//                on |w| = 1; w is read as (x_1, y_1, ..., x_n, y_n).
//   PUNCTURED_CN coordinates (x_1, y_1, ..., x_n, y_n), excluding the origin.
enum class ChartId { CYLINDER, PUNCTURED_CN };

inline std::string chart_name(ChartId id) {
  return id == ChartId::CYLINDER ? "CYLINDER" : "PUNCTURED_CN";
}

struct ChartPoint {
  ChartId chart = ChartId::PUNCTURED_CN;
  Eigen::VectorXd x;

  int dim() const { return static_cast<int>(x.size()); }
  int n() const {
    return chart == ChartId::CYLINDER ? (dim() - 1) / 2 : dim() / 2;
  }
  double t() const {
    if (chart != ChartId::CYLINDER) throw std::logic_error("t(): not a cylinder point");
    return x(0);
  }
  Eigen::VectorXd w() const {
    if (chart != ChartId::CYLINDER) throw std::logic_error("w(): not a cylinder point");
    return x.tail(dim() - 1);
  }
};

ChartPoint make_cylinder_point(double t, const Eigen::VectorXd& w);
ChartPoint make_punctured_point(const Eigen::VectorXd& q);

// Checks the chart constraints; throws std::invalid_argument on violation.
void validate_point(const ChartPoint& p);

// Tangent vector at a base point.  On the cylinder the components are
// (t-component, ambient sphere components) and the sphere part must satisfy
// <comp_w, w> = 0.
struct TangentVector {
  ChartPoint base;
  Eigen::VectorXd comp;

  int dim() const { return static_cast<int>(comp.size()); }
};

TangentVector make_tangent(const ChartPoint& base, const Eigen::VectorXd& comp);
void validate_tangent(const TangentVector& v);

// Orthogonal projection of ambient sphere components onto the tangent space
// of the sphere through w (radial part removed).
Eigen::VectorXd project_sphere_tangent(const Eigen::VectorXd& w, const Eigen::VectorXd& comp);

// Coordinate jets seeded at p: coordinate i as an order-2 jet.
JetVec jets_at(const ChartPoint& p);

}  // namespace lck
