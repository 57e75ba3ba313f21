#pragma once

#include <complex>
#include <vector>

#include "lck/calculus.hpp"
#include "lck/fields.hpp"

namespace lck {

// omega(X,Y) = g(X, JY).
DifferentialForm fundamental_form(const MetricField& g, const ComplexStructureField& J);

struct LeeExtraction {
  Eigen::VectorXd theta;  // covector components in the chart frame
  double residual;        // sup norm of the defect of d omega = theta ^ omega
};

// Pointwise least squares solve of d omega = theta ^ omega over all ordered
// coordinate triples. The residual doubles as the local l.c.K. certificate.
LeeExtraction extract_lee_form(const DifferentialForm& omega, const ChartPoint& p);

// Index raise theta_sharp = g^{-1} theta, with first order jets.
VectorField lee_field(const MetricField& g, const DifferentialForm& theta);

// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] at p.
Eigen::VectorXd nijenhuis(const ComplexStructureField& J, const VectorField& X,
                          const VectorField& Y, const ChartPoint& p);

// Levi pairing d eta(X, JY) for X, Y in the null distribution of eta.
double levi_form(const DifferentialForm& eta, const ComplexStructureField& J, const ChartPoint& p,
                 const TangentVector& X, const TangentVector& Y);

struct AdaptedCoframe {
  ChartPoint base;
  Eigen::VectorXd theta;                      // row of theta in chart coordinates
  Eigen::VectorXd theta_J;                    // row of theta o J
  std::vector<Eigen::VectorXcd> theta_alpha;  // complex coframe rows
  Eigen::VectorXd lee, anti_lee;              // theta-sharp, J theta-sharp components
  std::vector<Eigen::VectorXd> E, JE;         // orthonormal basis of the perp distribution
};

// Coframe adapted to (g, J, theta) at p: theta and theta o J as given, the
// remaining complex rows from a paired Gram-Schmidt over coordinate seeds
// projected to the g-orthocomplement of {theta-sharp, J theta-sharp}. The
// Gram-Schmidt runs against the positive pairing on that complement.
AdaptedCoframe build_adapted_coframe(const MetricField& g, const ComplexStructureField& J,
                                     const DifferentialForm& theta, const ChartPoint& p);
// Same with an explicit seed ordering; the resulting coframe differs by a
// constant unitary gauge only.
AdaptedCoframe build_adapted_coframe_seeded(const MetricField& g, const ComplexStructureField& J,
                                            const DifferentialForm& theta, const ChartPoint& p,
                                            const std::vector<int>& seed_order);

// (L_X J)(Y) = [X, JY] - J[X, Y] at p, for a concrete field Y.
Eigen::VectorXd lie_derivative_J_on_field(const ComplexStructureField& J, const VectorField& X,
                                          const VectorField& Y, const ChartPoint& p);

}  // namespace lck
