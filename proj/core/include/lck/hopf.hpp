#pragma once

#include <utility>

#include "lck/calculus.hpp"
#include "lck/fields.hpp"
#include "lck/hopf_data.hpp"
#include "lck/smooth_map.hpp"

namespace lck {

// All explicit objects of one Hopf model. Cylinder-chart fields use the
// ambient coordinates (t, w) with w in R^{2n}; forms are honest ambient
// extensions, the metric coefficient matrix is assembled through the sphere
// tangency projector and is therefore radially degenerate (its restriction to
// tangent vectors is the model metric). The punctured-chart metric pulls the
// cylinder one back through the inverse covering map and is nondegenerate.
struct HopfStructure {
  HopfData data;

  // cylinder chart
  DifferentialForm eta0, etaA;  // contact-type 1-forms, zero dt component
  VectorField A;                // weighted rotation field, the Reeb field of etaA
  VectorField N;                // d/dt
  VectorField xi;               // the rescaling flow generator; equals N
  ComplexStructureField JA;
  DifferentialForm OmegaA;       // 2 d(e^t etaA), closed form coefficients
  DifferentialForm omega_tilde;  // 2 e^{-t} OmegaA, t-independent coefficients
  MetricField g_tilde;           // omega_tilde(JA . , .)
  DifferentialForm theta;        // -dt

  // punctured chart
  ComplexStructureField J0;
  SmoothMap H, Hinv;
  MetricField g_bar;           // Hinv-pullback of g_tilde
  DifferentialForm omega_bar;  // Hinv-pullback of omega_tilde
  DifferentialForm theta_bar;  // Hinv-pullback of theta
};

DifferentialForm build_eta0(int n);
DifferentialForm build_etaA(const HopfData& data);
ComplexStructureField build_JA(const HopfData& data);
ComplexStructureField build_J0(int n);
VectorField build_field_A(const HopfData& data);
VectorField build_field_N(int n);

HopfStructure build_hopf_structure(const HopfData& data);

struct DeckGroupElement {
  enum class Kind { FLOW, TORUS, DECK, UNITARY };
  Kind kind = Kind::FLOW;
  double s = 0.0;            // FLOW translation length
  Eigen::VectorXd angles;    // TORUS angles, one per complex coordinate
  int k = 1;                 // DECK power
  Eigen::MatrixXd U;         // UNITARY block, real 2n x 2n, orthogonal, J0-linear
};

DeckGroupElement flow_element(double s);
DeckGroupElement torus_element(const Eigen::VectorXd& angles);
// The weighted circle action with angles a_j * t.
DeckGroupElement torus_weighted(const HopfData& data, double t);
DeckGroupElement deck_element(int k);
DeckGroupElement unitary_element(const Eigen::MatrixXd& U);

// FLOW, TORUS, UNITARY act on the cylinder chart; DECK acts on the punctured
// chart by the diagonal spectrum lambda^k.
SmoothMap group_action_map(const HopfData& data, const DeckGroupElement& el);
ChartPoint group_action(const HopfData& data, const DeckGroupElement& el, const ChartPoint& p);

// Diagonal matrix of the conjugated action on the punctured chart:
// H o (flow s, torus c) o Hinv multiplies coordinate z_j by e^{-a_j s} c_j.
Eigen::VectorXcd conjugated_diagonal(const HopfData& data, double s, const Eigen::VectorXd& angles);

// Rescaling recipe: from a homothety-normalized 2-form and the flow field,
// produce the candidate metric form 2 s^{-1} Omega and the 1-form -d log s,
// where s(x) = Omega(J xi, xi). Raises if s is nonpositive at an evaluation
// point.
std::pair<DifferentialForm, DifferentialForm> theorem_A_rescale(const DifferentialForm& Omega,
                                                                const VectorField& xi,
                                                                const ComplexStructureField& J);
ScalarField rescale_s_function(const DifferentialForm& Omega, const VectorField& xi,
                               const ComplexStructureField& J);

}  // namespace lck
