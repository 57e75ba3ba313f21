#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace lck {

// Parameters of a Hopf quotient: weights a (sorted ascending, positive),
// translation length s > 0, unit-modulus phases c.  The derived diagonal
// spectrum is lambda_j = e^{-a_j s} c_j, which then satisfies
// 0 < |lambda_n| <= ... <= |lambda_1| < 1.
struct HopfData {
  int n = 2;
  Eigen::VectorXd a;
  double s = 1.0;
  std::vector<std::complex<double>> c;

  std::vector<std::complex<double>> lambda() const {
    std::vector<std::complex<double>> out(n);
    for (int j = 0; j < n; ++j) out[j] = std::exp(-a(j) * s) * c[j];
    return out;
  }
};

inline void validate_hopf_data(const HopfData& d) {
  if (d.n < 2) throw std::invalid_argument("HopfData: n must be >= 2");
  if (d.a.size() != d.n) throw std::invalid_argument("HopfData: weight vector length != n");
  if (d.a(0) <= 0.0) throw std::invalid_argument("HopfData: weights must be positive");
  for (int j = 1; j < d.n; ++j)
    if (d.a(j) < d.a(j - 1))
      throw std::invalid_argument("HopfData: weights must be sorted ascending (0 < a_1 <= ... <= a_n)");
  if (!(d.s > 0.0)) throw std::invalid_argument("HopfData: s must be > 0");
  if (static_cast<int>(d.c.size()) != d.n)
    throw std::invalid_argument("HopfData: phase vector length != n");
  for (int j = 0; j < d.n; ++j)
    if (std::abs(std::abs(d.c[j]) - 1.0) > 1e-12)
      throw std::invalid_argument("HopfData: phases must have unit modulus");
  auto lam = d.lambda();
  for (int j = 0; j < d.n; ++j) {
    const double m = std::abs(lam[j]);
    if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("HopfData: spectrum not contracting");
    if (j > 0 && std::abs(lam[j]) > std::abs(lam[j - 1]) + 1e-15)
      throw std::invalid_argument("HopfData: spectrum not ordered");
  }
}

inline HopfData standard_hopf(int n = 2) {
  HopfData d;
  d.n = n;
  d.a = Eigen::VectorXd::Ones(n);
  d.s = std::log(2.0);
  d.c.assign(n, std::complex<double>(1.0, 0.0));
  return d;
}

}  // namespace lck
