#pragma once

#include <functional>

#include "lck/chart.hpp"
#include "lck/fields.hpp"
#include "lck/hopf_data.hpp"
#include "lck/jet.hpp"

namespace lck {

// Smooth map between charts, carried with second order jets of its component
// functions so pullbacks keep enough derivative information for one exterior
// derivative downstream.
struct SmoothMap {
  ChartId source = ChartId::CYLINDER;
  ChartId target = ChartId::PUNCTURED_CN;
  // Component jets of the map at p: out[mu] is the mu-th target coordinate.
  std::function<JetVec(const ChartPoint&)> components;

  ChartPoint apply(const ChartPoint& p) const;
  Eigen::MatrixXd jacobian(const ChartPoint& p) const;
  TangentVector pushforward(const TangentVector& v) const;
};

SmoothMap compose(const SmoothMap& g, const SmoothMap& f);  // g after f

// Covering projection H(t, w) = (e^{-a_j t} w_j) from the cylinder chart to
// the punctured chart, in the listed real coordinates.
SmoothMap map_H(const HopfData& data);

// Inverse of H. The t coordinate solves sum_j e^{2 a_j t} |q_j|^2 = 1, which
// has a unique root since the left side is strictly increasing in t; solved
// by bisection plus Newton polish, first and second derivatives of t(q) by
// implicit differentiation.
SmoothMap map_H_inverse(const HopfData& data);

// Root of F(t, q) = sum_j e^{2 a_j t} |q_j|^2 - 1 = 0 for a fixed q.
double solve_cylinder_time(const HopfData& data, const Eigen::VectorXd& q);

}  // namespace lck
