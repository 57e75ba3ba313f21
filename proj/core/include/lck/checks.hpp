#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lck/hermitian.hpp"
#include "lck/hopf.hpp"
#include "lck/sampling.hpp"

namespace lck {

// One verified identity. `max_residual` is the worst defect observed over the
// sampled points and `pass` means max_residual < tolerance strictly. A few
// checks use non-defect residual conventions (ratio against a floor, negated
// eigenvalue); those explain themselves in `notes`.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int points = 0;
  bool pass = false;
  std::string notes;
};

struct ToleranceTable {
  std::map<std::string, double> overrides;

  double get(const std::string& name, double fallback) const {
    auto it = overrides.find(name);
    return it == overrides.end() ? fallback : it->second;
  }
};

struct SuiteContext {
  const HopfStructure* hs = nullptr;
  int points = 100;
  double t_range = 2.0;
  std::uint64_t seed = 12345;
  int parallel = 1;
  ToleranceTable tols;
};

// Canonical execution order of the named suites.
const std::vector<std::string>& canonical_suite_names();

std::vector<CheckResult> run_suite(const std::string& name, const SuiteContext& ctx);

std::vector<CheckResult> suite_lck(const SuiteContext& ctx);
std::vector<CheckResult> suite_parallel_lee(const SuiteContext& ctx);
std::vector<CheckResult> suite_contact(const SuiteContext& ctx);
std::vector<CheckResult> suite_biholomorphism(const SuiteContext& ctx);
std::vector<CheckResult> suite_group_actions(const SuiteContext& ctx);
std::vector<CheckResult> suite_lcr(const SuiteContext& ctx);
std::vector<CheckResult> suite_theorem_a(const SuiteContext& ctx);

// Operation-level spellings of the composite verifications.
std::vector<CheckResult> check_lck(const SuiteContext& ctx);
std::vector<CheckResult> check_parallel_lee(const SuiteContext& ctx);
std::vector<CheckResult> check_contact_pseudohermitian(const SuiteContext& ctx);

// f must be a chart self-map; verifies f* g = g and commutation of the
// pushforward with the chart complex structure.
CheckResult check_holomorphic_isometry(const SuiteContext& ctx, const SmoothMap& f,
                                       const std::string& label);
// Verifies f* omega = factor * omega in the relative sup norm.
CheckResult check_homothety(const SuiteContext& ctx, const SmoothMap& f,
                            const DifferentialForm& omega, double factor,
                            const std::string& label);
// Verifies that the pushforward of f maps the perp distribution of the
// adapted coframe at p into the one at f(p).
CheckResult check_perp_preservation(const SuiteContext& ctx, const SmoothMap& f,
                                    const std::string& label);

// Decomposition of the coframe action of a structure-preserving map:
//   f* theta       = theta
//   f* (theta o J) = lambda (theta o J)
//   f* theta^al    = sqrt(lambda) U^al_be theta^be + v^al (theta o J)
struct LCRDecomposition {
  double lambda = 1.0;
  Eigen::MatrixXcd U;
  Eigen::VectorXcd v;
  double residual = 0.0;          // sup defect of the coframe reconstruction
  double unitary_residual = 0.0;  // sup |U^* U - I|
  double theta_residual = 0.0;    // sup defect of f* theta = theta
};

LCRDecomposition analyze_lcr(const HopfStructure& hs, const SmoothMap& f, const ChartPoint& p);
LCRDecomposition analyze_lcr_seeded(const HopfStructure& hs, const SmoothMap& f,
                                    const ChartPoint& p, const std::vector<int>& seed_order);

// Shared recovery core on explicit pulled-back rows, exposed so planted and
// gauge-change scenarios can reuse it.
LCRDecomposition analyze_lcr_rows(const AdaptedCoframe& cf, const Eigen::MatrixXd& G,
                                  const Eigen::VectorXd& pulled_theta,
                                  const Eigen::VectorXd& pulled_theta_J,
                                  const std::vector<Eigen::VectorXcd>& pulled_alpha);

// Synthesizes the pulled rows of a map with prescribed (lambda, U, v) against
// the coframe at p and runs the recovery; exact round trip expected.
LCRDecomposition analyze_lcr_planted(const HopfStructure& hs, const ChartPoint& p, double lambda,
                                     const Eigen::MatrixXcd& U, const Eigen::VectorXcd& v);

// Diagonal complex-linear self-map of the punctured chart.
SmoothMap punctured_diagonal_map(int n, const Eigen::VectorXcd& diag);
// General real-linear self-map of the punctured chart (test scaffolding; no
// structure is assumed about M beyond invertibility).
SmoothMap punctured_linear_map(const Eigen::MatrixXd& M);

}  // namespace lck
