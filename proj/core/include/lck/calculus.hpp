#pragma once

#include <vector>

#include "lck/fields.hpp"
#include "lck/smooth_map.hpp"

namespace lck {

// Alternation convention used throughout:
//   (a ^ b)(X,Y)  = (a(X)b(Y) - a(Y)b(X)) / 2
//   (da)(X,Y)     = (X a(Y) - Y a(X) - a([X,Y])) / 2
// Degree-3 component arrays follow the matching cyclic normalization, so
// identities between d of a 2-form and 1-form ^ 2-form are convention safe.

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm exterior_derivative(const ScalarField& f);
DifferentialForm exterior_derivative(const DifferentialForm& a);  // degree 0 or 1

VectorField bracket(const VectorField& X, const VectorField& Y);

// (L_X g)_ij at p for a symmetric or antisymmetric (0,2) coefficient field.
Eigen::MatrixXd lie_derivative_metric(const VectorField& X, const MetricField& g,
                                      const ChartPoint& p);
Eigen::MatrixXd lie_derivative_two_form(const VectorField& X, const DifferentialForm& om,
                                        const ChartPoint& p);
Eigen::VectorXd lie_derivative_one_form(const VectorField& X, const DifferentialForm& al,
                                        const ChartPoint& p);
// (L_X J)^i_j at p for a (1,1) field.
Eigen::MatrixXd lie_derivative_endomorphism(const VectorField& X, const ComplexStructureField& J,
                                            const ChartPoint& p);

DifferentialForm interior_product(const VectorField& X, const DifferentialForm& omega2);

DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& alpha);
MetricField pullback_metric(const SmoothMap& f, const MetricField& g);
ScalarField pullback_scalar(const SmoothMap& f, const ScalarField& h);

// Gamma[k](i,j) of the Levi-Civita connection of g at p. Requires the
// coefficient matrix to be safely invertible; condition numbers above 1e12
// signal a degenerate sample and raise.
std::vector<Eigen::MatrixXd> christoffel(const MetricField& g, const ChartPoint& p);

// (grad sigma)_ij = d_i sigma_j - Gamma^k_ij sigma_k at p.
Eigen::MatrixXd covariant_derivative_oneform(const MetricField& g, const DifferentialForm& sigma,
                                             const ChartPoint& p);
// Components of the connection applied to Z in direction X, at X.base.
Eigen::VectorXd covariant_derivative_vector(const MetricField& g, const TangentVector& X,
                                            const VectorField& Z);
// (grad g)_kij at p; vanishes identically for the Levi-Civita connection.
std::vector<Eigen::MatrixXd> covariant_derivative_metric(const MetricField& g,
                                                         const ChartPoint& p);

// Degree-3 component arrays over ordered triples i<j<k, cyclic normalization.
Eigen::VectorXd three_form_from_d(const DifferentialForm& omega2, const ChartPoint& p);
Eigen::VectorXd three_form_from_wedge(const Eigen::VectorXd& theta_coeffs,
                                      const DifferentialForm& omega2, const ChartPoint& p);
// Row weights of the wedge system: row per triple, column per theta slot.
Eigen::MatrixXd three_form_wedge_matrix(const DifferentialForm& omega2, const ChartPoint& p);

// Scalar field p -> alpha_p(X_p) carrying jets, for directional derivatives.
ScalarField contract_form_field(const DifferentialForm& alpha, const VectorField& X);

}  // namespace lck
