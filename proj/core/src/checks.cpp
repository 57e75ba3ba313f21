#include "lck/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lck/hermitian.hpp"

namespace lck {
namespace {

using Cplx = std::complex<double>;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Per-check sample stream: keyed by the run seed and the check name, so the
// drawn samples do not depend on which other checks run or in which order.
Sampler check_sampler(const SuiteContext& ctx, const std::string& name) {
  return Sampler(ctx.seed ^ fnv1a(name));
}

// Componentwise max-reduction over an index range, optionally split across
// threads in disjoint slices. All inputs are pre-drawn, so the result is
// independent of the slicing; max is exact, which keeps parallel runs
// bit-identical to serial ones.
Eigen::VectorXd max_over_indices_vec(int count, int threads, int width,
                                     const std::function<Eigen::VectorXd(int)>& fn) {
  const double ninf = -std::numeric_limits<double>::infinity();
  threads = std::max(1, std::min(threads, std::max(count, 1)));
  auto reduce_range = [&](int lo, int hi, Eigen::VectorXd& acc, int& bad, std::string& msg) {
    for (int i = lo; i < hi; ++i) {
      try {
        acc = acc.cwiseMax(fn(i));
      } catch (const std::exception& e) {
        bad = i;
        msg = e.what();
        return;
      }
    }
  };
  std::vector<Eigen::VectorXd> acc(threads, Eigen::VectorXd::Constant(width, ninf));
  std::vector<int> bad(threads, -1);
  std::vector<std::string> msg(threads);
  if (threads == 1) {
    reduce_range(0, count, acc[0], bad[0], msg[0]);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(count, lo + chunk);
      pool.emplace_back([&, t, lo, hi]() { reduce_range(lo, hi, acc[t], bad[t], msg[t]); });
    }
    for (auto& th : pool) th.join();
  }
  int first = -1;
  for (int t = 0; t < threads; ++t)
    if (bad[t] >= 0 && (first < 0 || bad[t] < bad[first])) first = t;
  if (first >= 0) throw std::runtime_error(msg[first]);
  Eigen::VectorXd out = Eigen::VectorXd::Constant(width, ninf);
  for (const auto& a : acc) out = out.cwiseMax(a);
  return out;
}

double max_over_indices(int count, int threads, const std::function<double(int)>& fn) {
  Eigen::VectorXd r = max_over_indices_vec(count, threads, 1, [&](int i) {
    Eigen::VectorXd v(1);
    v(0) = fn(i);
    return v;
  });
  return r(0);
}

CheckResult finish(const SuiteContext& ctx, const std::string& name, double fallback_tol,
                   double max_res, int points, const std::string& notes = "") {
  CheckResult r;
  r.name = name;
  r.tolerance = ctx.tols.get(name, fallback_tol);
  r.max_residual = max_res;
  r.points = points;
  r.pass = max_res < r.tolerance;
  r.notes = notes;
  return r;
}

ChartPoint draw_punctured(Sampler& smp, const HopfStructure& hs, double t_range) {
  return hs.H.apply(smp.cylinder_point(hs.data.n, t_range));
}

double sup_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double rel_sup(const Eigen::MatrixXd& diff, const Eigen::MatrixXd& ref) {
  return sup_abs(diff) / std::max(1.0, sup_abs(ref));
}

Eigen::VectorXd one_form_row(const DifferentialForm& al, const ChartPoint& p) {
  JetMat c = al.coeff(p);
  Eigen::VectorXd r(c.cols);
  for (int i = 0; i < c.cols; ++i) r(i) = c.at(0, i).v;
  return r;
}

VectorField scaled_field(const VectorField& X, double c) {
  VectorField out;
  out.chart = X.chart;
  auto comp = X.comp;
  out.comp = [comp, c](const ChartPoint& p) {
    JetVec v = comp(p);
    for (auto& e : v) e = e * c;
    return v;
  };
  return out;
}

DifferentialForm scaled_form(const DifferentialForm& om, double c) {
  DifferentialForm out;
  out.chart = om.chart;
  out.degree = om.degree;
  auto coeff = om.coeff;
  out.coeff = [coeff, c](const ChartPoint& p) {
    JetMat m = coeff(p);
    for (auto& e : m.a) e = e * c;
    return m;
  };
  return out;
}

double weighted_norm(const HopfData& data, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int j = 0; j < data.n; ++j)
    s += data.a(j) * (w(2 * j) * w(2 * j) + w(2 * j + 1) * w(2 * j + 1));
  return s;
}

// Euclidean-orthonormal basis of the horizontal distribution at a cylinder
// point: sphere tangent, eta_A-null, 2n-2 vectors.
std::vector<Eigen::VectorXd> horizontal_frame(const HopfStructure& hs, const ChartPoint& p) {
  const int d = p.dim();
  const Eigen::VectorXd w = p.w();
  const Eigen::VectorXd Ap = hs.A.values(p);
  std::vector<Eigen::VectorXd> frame;
  for (int i = 0; i < d - 1 && static_cast<int>(frame.size()) < d - 3; ++i) {
    Eigen::VectorXd amb = Eigen::VectorXd::Zero(d - 1);
    amb(i) = 1.0;
    Eigen::VectorXd full = Eigen::VectorXd::Zero(d);
    full.tail(d - 1) = project_sphere_tangent(w, amb);
    full -= hs.etaA.evaluate(p, full) * Ap;
    for (const auto& b : frame) full -= full.dot(b) * b;
    const double nn = full.norm();
    if (nn > 1e-8) frame.push_back(full / nn);
  }
  if (static_cast<int>(frame.size()) != d - 3)
    throw std::runtime_error("horizontal_frame: rank deficiency at sample point");
  return frame;
}

Eigen::VectorXd jet_values(const JetVec& v) {
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out(i) = v[i].v;
  return out;
}

// Synthetic pulled-back coframe rows for a prescribed decomposition.
struct SynthRows {
  Eigen::VectorXd theta, theta_J;
  std::vector<Eigen::VectorXcd> alpha;
};

SynthRows synthesize_rows(const AdaptedCoframe& cf, double lambda, const Eigen::MatrixXcd& U,
                          const Eigen::VectorXcd& v) {
  const int m1 = static_cast<int>(cf.theta_alpha.size());
  const int d = static_cast<int>(cf.theta.size());
  SynthRows out;
  out.theta = cf.theta;
  out.theta_J = lambda * cf.theta_J;
  const double sq = std::sqrt(lambda);
  for (int al = 0; al < m1; ++al) {
    Eigen::VectorXcd row = Eigen::VectorXcd::Zero(d);
    for (int be = 0; be < m1; ++be) row += sq * U(al, be) * cf.theta_alpha[be];
    for (int j = 0; j < d; ++j) row(j) += v(al) * Cplx(cf.theta_J(j), 0.0);
    out.alpha.push_back(row);
  }
  return out;
}

}  // namespace

SmoothMap punctured_linear_map(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("punctured_linear_map: square matrix expected");
  SmoothMap f;
  f.source = ChartId::PUNCTURED_CN;
  f.target = ChartId::PUNCTURED_CN;
  const Eigen::MatrixXd Mc = M;
  f.components = [Mc](const ChartPoint& p) {
    if (p.chart != ChartId::PUNCTURED_CN)
      throw std::invalid_argument("punctured_linear_map: wrong source chart");
    JetVec x = jets_at(p);
    const int d = static_cast<int>(x.size());
    JetVec out(d, JetScalar::constant(d, 0.0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (Mc(i, j) != 0.0) out[i] = out[i] + x[j] * Mc(i, j);
    return out;
  };
  return f;
}

SmoothMap punctured_diagonal_map(int n, const Eigen::VectorXcd& diag) {
  if (diag.size() != n) throw std::invalid_argument("punctured_diagonal_map: diagonal length != n");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    M(2 * j, 2 * j) = diag(j).real();
    M(2 * j, 2 * j + 1) = -diag(j).imag();
    M(2 * j + 1, 2 * j) = diag(j).imag();
    M(2 * j + 1, 2 * j + 1) = diag(j).real();
  }
  return punctured_linear_map(M);
}

const std::vector<std::string>& canonical_suite_names() {
  static const std::vector<std::string> names = {
      "lck",           "parallel_lee", "contact", "biholomorphism",
      "group_actions", "lcr",          "theorem_a"};
  return names;
}

// ---------------------------------------------------------------------------
// lck suite

std::vector<CheckResult> suite_lck(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  std::vector<CheckResult> out;

  {
    Sampler smp = check_sampler(ctx, "lck_identity");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return extract_lee_form(hs.omega_bar, pts[i]).residual;
    });
    out.push_back(finish(ctx, "lck_identity", 1e-7, m, ctx.points,
                         "least squares certificate of d omega = theta ^ omega"));
  }

  {
    Sampler smp = check_sampler(ctx, "lck_lee_matches_minus_dt");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      Eigen::VectorXd fit = extract_lee_form(hs.omega_bar, pts[i]).theta;
      Eigen::VectorXd ref = one_form_row(hs.theta_bar, pts[i]);
      return (fit - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
    });
    out.push_back(finish(ctx, "lck_lee_matches_minus_dt", 1e-8, m, ctx.points,
                         "relative to the sup of the reference row"));
  }

  {
    Sampler smp = check_sampler(ctx, "lck_dtheta_closed");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    DifferentialForm dth = exterior_derivative(hs.theta_bar);
    double m = max_over_indices(ctx.points, ctx.parallel,
                                [&](int i) { return sup_abs(dth.coeff(pts[i]).values()); });
    out.push_back(finish(ctx, "lck_dtheta_closed", 1e-9, m, ctx.points, "derivative route"));
  }

  {
    // Independent finite-difference route: re-extract the Lee form on a
    // displaced stencil and Richardson-combine two step sizes.
    Sampler smp = check_sampler(ctx, "lck_dtheta_stencil");
    const double window = std::min(ctx.t_range, 1.0);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, window));
    const double h = 1e-3;
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const ChartPoint& q = pts[i];
      const int d = q.dim();
      auto theta_at = [&](const Eigen::VectorXd& x) {
        return extract_lee_form(hs.omega_bar, ChartPoint{ChartId::PUNCTURED_CN, x}).theta;
      };
      Eigen::MatrixXd R(d, d);
      for (int a = 0; a < d; ++a) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e(a) = 1.0;
        Eigen::VectorXd dh = (theta_at(q.x + h * e) - theta_at(q.x - h * e)) / (2.0 * h);
        Eigen::VectorXd dh2 = (theta_at(q.x + 0.5 * h * e) - theta_at(q.x - 0.5 * h * e)) / h;
        R.row(a) = ((4.0 * dh2 - dh) / 3.0).transpose();
      }
      double worst = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
          worst = std::max(worst, std::abs(0.5 * (R(a, b) - R(b, a))));
      return worst;
    });
    out.push_back(finish(ctx, "lck_dtheta_stencil", 1e-5, m, ctx.points,
                         "finite difference route, Richardson extrapolated"));
  }

  return out;
}

// ---------------------------------------------------------------------------
// parallel Lee suite

std::vector<CheckResult> suite_parallel_lee(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  const int d_cyl = 2 * hs.data.n + 1;
  std::vector<CheckResult> out;

  {
    Sampler smp = check_sampler(ctx, "nabla_theta_bar");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return sup_abs(covariant_derivative_oneform(hs.g_bar, hs.theta_bar, pts[i]));
    });
    out.push_back(finish(ctx, "nabla_theta_bar", 1e-7, m, ctx.points));
  }

  {
    Sampler smp = check_sampler(ctx, "lee_norm_constant");
    std::vector<double> norms;
    for (int i = 0; i < ctx.points; ++i) {
      ChartPoint q = draw_punctured(smp, hs, ctx.t_range);
      Eigen::MatrixXd G = hs.g_bar.matrix(q);
      Eigen::VectorXd th = one_form_row(hs.theta_bar, q);
      norms.push_back(std::sqrt(th.dot(G.partialPivLu().solve(th))));
    }
    double mean = std::accumulate(norms.begin(), norms.end(), 0.0) / norms.size();
    double var = 0.0;
    for (double v : norms) var += (v - mean) * (v - mean);
    var /= norms.size();
    std::ostringstream note;
    note << "std of |theta|_g over samples; mean value " << mean;
    out.push_back(finish(ctx, "lee_norm_constant", 1e-8, std::sqrt(var), ctx.points, note.str()));
  }

  {
    Sampler smp = check_sampler(ctx, "koszul_identity");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    VectorField sharp = lee_field(hs.g_bar, hs.theta_bar);
    DifferentialForm dth = exterior_derivative(hs.theta_bar);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const ChartPoint& q = pts[i];
      const int d = q.dim();
      auto Gam = christoffel(hs.g_bar, q);
      Eigen::MatrixXd G = hs.g_bar.matrix(q);
      JetVec sj = sharp.comp(q);
      Eigen::VectorXd sv = jet_values(sj);
      // 2 g(nabla_i sharp, e_j) against (L_sharp g)_ij + 2 (d theta)_ij
      Eigen::MatrixXd lhs(d, d);
      for (int i2 = 0; i2 < d; ++i2)
        for (int j = 0; j < d; ++j) {
          double acc = 0.0;
          for (int k = 0; k < d; ++k) {
            double cov = sj[k].g(i2);
            for (int l = 0; l < d; ++l) cov += Gam[k](i2, l) * sv(l);
            acc += G(k, j) * cov;
          }
          lhs(i2, j) = 2.0 * acc;
        }
      Eigen::MatrixXd rhs =
          lie_derivative_metric(sharp, hs.g_bar, q) + 2.0 * dth.coeff(q).values();
      return sup_abs(lhs - rhs) / std::max({1.0, sup_abs(lhs), sup_abs(rhs)});
    });
    out.push_back(finish(ctx, "koszul_identity", 1e-7, m, ctx.points));
  }

  VectorField lee_up = scaled_field(coordinate_field(ChartId::CYLINDER, d_cyl, 0), -0.5);
  VectorField anti_up = scaled_field(hs.A, 0.5);

  auto lie_metric_check = [&](const std::string& name, const VectorField& X) {
    Sampler smp = check_sampler(ctx, name);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return sup_abs(lie_derivative_metric(X, hs.g_tilde, pts[i]));
    });
    out.push_back(finish(ctx, name, 1e-7, m, ctx.points));
  };
  auto lie_endo_check = [&](const std::string& name, const VectorField& X) {
    Sampler smp = check_sampler(ctx, name);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return sup_abs(lie_derivative_endomorphism(X, hs.JA, pts[i]));
    });
    out.push_back(finish(ctx, name, 1e-7, m, ctx.points));
  };

  lie_metric_check("lie_lee_metric", lee_up);
  lie_metric_check("lie_anti_lee_metric", anti_up);
  lie_endo_check("lie_lee_complex_structure", lee_up);
  lie_endo_check("lie_anti_lee_complex_structure", anti_up);

  {
    Sampler smp = check_sampler(ctx, "lie_lee_metric_bar");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    VectorField sharp = lee_field(hs.g_bar, hs.theta_bar);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      Eigen::MatrixXd L = lie_derivative_metric(sharp, hs.g_bar, pts[i]);
      return rel_sup(L, hs.g_bar.matrix(pts[i]));
    });
    out.push_back(finish(ctx, "lie_lee_metric_bar", 1e-7, m, ctx.points,
                         "relative to the metric coefficient scale"));
  }

  {
    Sampler smp = check_sampler(ctx, "lee_field_is_minus_half_N");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    VectorField sharp = lee_field(hs.g_bar, hs.theta_bar);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      TangentVector tv = make_tangent(pts[i], sharp.values(pts[i]));
      TangentVector up = hs.Hinv.pushforward(tv);
      Eigen::VectorXd expect = Eigen::VectorXd::Zero(up.dim());
      expect(0) = -0.5;
      return (up.comp - expect).cwiseAbs().maxCoeff();
    });
    out.push_back(finish(ctx, "lee_field_is_minus_half_N", 1e-8, m, ctx.points));
  }

  return out;
}

// ---------------------------------------------------------------------------
// contact suite

std::vector<CheckResult> suite_contact(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  std::vector<CheckResult> out;

  auto cyl_points = [&](const std::string& name) {
    Sampler smp = check_sampler(ctx, name);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    return pts;
  };

  {
    auto pts = cyl_points("reeb_normalization");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return std::abs(hs.etaA.evaluate(pts[i], hs.A.values(pts[i])) - 1.0);
    });
    out.push_back(finish(ctx, "reeb_normalization", 1e-10, m, ctx.points));
  }

  {
    auto pts = cyl_points("reeb_weighted_pairing");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const double S = weighted_norm(hs.data, pts[i].w());
      return std::abs(hs.eta0.evaluate(pts[i], hs.A.values(pts[i])) - S);
    });
    out.push_back(finish(ctx, "reeb_weighted_pairing", 1e-12, m, ctx.points));
  }

  {
    // Omega against 2 d(e^t eta) computed by the generic derivative kernel.
    auto pts = cyl_points("omega_two_paths");
    DifferentialForm et_eta;
    et_eta.chart = ChartId::CYLINDER;
    et_eta.degree = 1;
    DifferentialForm etaA = hs.etaA;
    et_eta.coeff = [etaA](const ChartPoint& p) {
      JetVec x = jets_at(p);
      JetScalar et = jet_exp(x[0]);
      JetMat base = etaA.coeff(p);
      JetMat row(1, base.cols, p.dim());
      for (int i = 0; i < base.cols; ++i) row.at(0, i) = et * base.at(0, i);
      return row;
    };
    DifferentialForm route2 = exterior_derivative(et_eta);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      Eigen::MatrixXd diff =
          2.0 * route2.coeff(pts[i]).values() - hs.OmegaA.coeff(pts[i]).values();
      return sup_abs(diff);
    });
    out.push_back(finish(ctx, "omega_two_paths", 1e-12, m, ctx.points));
  }

  {
    auto pts = cyl_points("reeb_interior_product");
    DifferentialForm deta = exterior_derivative(hs.etaA);
    DifferentialForm io = interior_product(hs.A, deta);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return one_form_row(io, pts[i]).cwiseAbs().maxCoeff();
    });
    out.push_back(finish(ctx, "reeb_interior_product", 1e-9, m, ctx.points));
  }

  {
    auto pts = cyl_points("levi_positive");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      auto frame = horizontal_frame(hs, pts[i]);
      const int k = static_cast<int>(frame.size());
      Eigen::MatrixXd L(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          L(a, b) = levi_form(hs.etaA, hs.JA, pts[i], make_tangent(pts[i], frame[a]),
                              make_tangent(pts[i], frame[b]));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ev(0.5 * (L + L.transpose()));
      return -ev.eigenvalues().minCoeff();
    });
    out.push_back(finish(ctx, "levi_positive", 0.0, m, ctx.points,
                         "residual is the negated smallest Levi eigenvalue; pass "
                         "requires strict positivity"));
  }

  {
    auto pts = cyl_points("levi_closed_form");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      auto frame = horizontal_frame(hs, pts[i]);
      const int k = static_cast<int>(frame.size());
      const double S = weighted_norm(hs.data, pts[i].w());
      double worst = 0.0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          double L = levi_form(hs.etaA, hs.JA, pts[i], make_tangent(pts[i], frame[a]),
                               make_tangent(pts[i], frame[b]));
          worst = std::max(worst, std::abs(L - (a == b ? 1.0 / S : 0.0)));
        }
      return worst;
    });
    out.push_back(finish(ctx, "levi_closed_form", 1e-10, m, ctx.points,
                         "identity matrix over the weighted norm on an orthonormal "
                         "horizontal frame"));
  }

  {
    auto pts = cyl_points("contact_volume");
    DifferentialForm deta = exterior_derivative(hs.etaA);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      auto frame = horizontal_frame(hs, pts[i]);
      const int k = static_cast<int>(frame.size());
      Eigen::MatrixXd M(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) M(a, b) = deta.evaluate(pts[i], frame[a], frame[b]);
      const double reeb = hs.etaA.evaluate(pts[i], hs.A.values(pts[i]));
      const double det = std::abs(reeb * M.determinant());
      return 1e-6 / det;
    });
    out.push_back(finish(ctx, "contact_volume", 1.0, m, ctx.points,
                         "residual = 1e-6 / |contact volume determinant|; pass means "
                         "the volume stays above the 1e-6 floor"));
  }

  return out;
}

// ---------------------------------------------------------------------------
// biholomorphism suite

std::vector<CheckResult> suite_biholomorphism(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  const int n = hs.data.n;
  const int d_cyl = 2 * n + 1;
  std::vector<CheckResult> out;

  {
    Sampler smp = check_sampler(ctx, "intertwine_H_JA");
    const int nv = 10;
    std::vector<ChartPoint> pts;
    std::vector<std::vector<Eigen::VectorXd>> vecs;
    for (int i = 0; i < ctx.points; ++i) {
      ChartPoint p = smp.cylinder_point(n, ctx.t_range);
      pts.push_back(p);
      std::vector<Eigen::VectorXd> vs;
      for (int j = 0; j < nv; ++j) {
        Eigen::VectorXd v = smp.cylinder_tangent(p);
        vs.push_back(v / v.norm());
      }
      vecs.push_back(vs);
    }
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const ChartPoint& p = pts[i];
      ChartPoint q = hs.H.apply(p);
      double worst = 0.0;
      for (const auto& v : vecs[i]) {
        Eigen::VectorXd left = hs.H.pushforward(make_tangent(p, hs.JA.apply(p, v))).comp;
        Eigen::VectorXd right = hs.J0.apply(q, hs.H.pushforward(make_tangent(p, v)).comp);
        worst = std::max(worst, (left - right).cwiseAbs().maxCoeff());
      }
      return worst;
    });
    out.push_back(finish(ctx, "intertwine_H_JA", 1e-7, m, ctx.points, "10 unit vectors per point"));
  }

  {
    Sampler smp = check_sampler(ctx, "H_roundtrip");
    std::vector<ChartPoint> ps, qs;
    for (int i = 0; i < ctx.points; ++i) {
      ps.push_back(smp.cylinder_point(n, ctx.t_range));
      qs.push_back(draw_punctured(smp, hs, ctx.t_range));
    }
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      double r1 = (hs.Hinv.apply(hs.H.apply(ps[i])).x - ps[i].x).cwiseAbs().maxCoeff();
      double r2 = (hs.H.apply(hs.Hinv.apply(qs[i])).x - qs[i].x).cwiseAbs().maxCoeff();
      return std::max(r1, r2);
    });
    out.push_back(finish(ctx, "H_roundtrip", 1e-10, m, ctx.points));
  }

  auto jacobian_fd_check = [&](const std::string& name, const SmoothMap& f,
                               const std::vector<ChartPoint>& pts) {
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const ChartPoint& p = pts[i];
      const int d = p.dim();
      Eigen::MatrixXd Jan = f.jacobian(p);
      Eigen::MatrixXd Jfd(Jan.rows(), d);
      for (int a = 0; a < d; ++a) {
        const double h = 1e-6 * std::max(1.0, std::abs(p.x(a)));
        Eigen::VectorXd xp = p.x, xm = p.x;
        xp(a) += h;
        xm(a) -= h;
        // raw chart points: the map formulas are ambient, so off-constraint
        // stencil nodes are fine for differencing
        Eigen::VectorXd fp = jet_values(f.components(ChartPoint{p.chart, xp}));
        Eigen::VectorXd fm = jet_values(f.components(ChartPoint{p.chart, xm}));
        Jfd.col(a) = (fp - fm) / (2.0 * h);
      }
      return rel_sup(Jfd - Jan, Jan);
    });
    out.push_back(finish(ctx, name, 1e-6, m, ctx.points, "central differences vs jet Jacobian"));
  };

  {
    Sampler smp = check_sampler(ctx, "H_jacobian_fd");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(n, ctx.t_range));
    jacobian_fd_check("H_jacobian_fd", hs.H, pts);
  }
  {
    Sampler smp = check_sampler(ctx, "H_inverse_jacobian_fd");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    jacobian_fd_check("H_inverse_jacobian_fd", hs.Hinv, pts);
  }

  {
    Sampler smp = check_sampler(ctx, "nijenhuis_JA");
    std::vector<ChartPoint> pts;
    std::vector<Eigen::VectorXd> s1, s2, mod;
    for (int i = 0; i < ctx.points; ++i) {
      pts.push_back(smp.cylinder_point(n, ctx.t_range));
      s1.push_back(smp.gaussian(d_cyl).normalized());
      s2.push_back(smp.gaussian(d_cyl).normalized());
      mod.push_back(smp.gaussian(d_cyl));
    }
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      VectorField X = projected_constant_field(d_cyl, s1[i]);
      VectorField Y = modulated_field(ChartId::CYLINDER, d_cyl, s2[i], mod[i]);
      return nijenhuis(hs.JA, X, Y, pts[i]).cwiseAbs().maxCoeff();
    });
    out.push_back(finish(ctx, "nijenhuis_JA", 1e-7, m, ctx.points));
  }

  {
    Sampler smp = check_sampler(ctx, "nijenhuis_J0");
    std::vector<ChartPoint> pts;
    std::vector<Eigen::VectorXd> s1, s2, m1, m2;
    for (int i = 0; i < ctx.points; ++i) {
      pts.push_back(draw_punctured(smp, hs, ctx.t_range));
      s1.push_back(smp.gaussian(2 * n).normalized());
      s2.push_back(smp.gaussian(2 * n).normalized());
      m1.push_back(smp.gaussian(2 * n));
      m2.push_back(smp.gaussian(2 * n));
    }
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      VectorField X = modulated_field(ChartId::PUNCTURED_CN, 2 * n, s1[i], m1[i]);
      VectorField Y = modulated_field(ChartId::PUNCTURED_CN, 2 * n, s2[i], m2[i]);
      return nijenhuis(hs.J0, X, Y, pts[i]).cwiseAbs().maxCoeff();
    });
    out.push_back(finish(ctx, "nijenhuis_J0", 1e-12, m, ctx.points));
  }

  {
    Sampler smp = check_sampler(ctx, "omega_bar_two_paths");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    DifferentialForm route2 = fundamental_form(hs.g_bar, hs.J0);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      Eigen::MatrixXd c1 = hs.omega_bar.coeff(pts[i]).values();
      return rel_sup(c1 - route2.coeff(pts[i]).values(), c1);
    });
    out.push_back(finish(ctx, "omega_bar_two_paths", 1e-9, m, ctx.points,
                         "pullback route vs fundamental form route"));
  }

  return out;
}

// ---------------------------------------------------------------------------
// group action suite

CheckResult check_homothety(const SuiteContext& ctx, const SmoothMap& f,
                            const DifferentialForm& omega, double factor,
                            const std::string& label) {
  const HopfStructure& hs = *ctx.hs;
  std::string name = "homothety_" + label;
  Sampler smp = check_sampler(ctx, name);
  std::vector<ChartPoint> pts;
  for (int i = 0; i < ctx.points; ++i) {
    if (f.source == ChartId::CYLINDER)
      pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    else
      pts.push_back(draw_punctured(smp, hs, ctx.t_range));
  }
  DifferentialForm pb = pullback(f, omega);
  double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
    Eigen::MatrixXd ref = factor * omega.coeff(pts[i]).values();
    return rel_sup(pb.coeff(pts[i]).values() - ref, ref);
  });
  return finish(ctx, name, 1e-8, m, ctx.points, "relative coefficient sup norm");
}

CheckResult check_holomorphic_isometry(const SuiteContext& ctx, const SmoothMap& f,
                                       const std::string& label) {
  const HopfStructure& hs = *ctx.hs;
  std::string name = "holomorphic_isometry_" + label;
  Sampler smp = check_sampler(ctx, name);
  const bool cyl = f.source == ChartId::CYLINDER;
  const MetricField& g = cyl ? hs.g_tilde : hs.g_bar;
  const ComplexStructureField& J = cyl ? hs.JA : hs.J0;
  std::vector<ChartPoint> pts;
  for (int i = 0; i < ctx.points; ++i) {
    if (cyl)
      pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    else
      pts.push_back(draw_punctured(smp, hs, ctx.t_range));
  }
  MetricField pm = pullback_metric(f, g);
  double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
    const ChartPoint& p = pts[i];
    ChartPoint q = f.apply(p);
    Eigen::MatrixXd Gp = g.matrix(p);
    double r1 = rel_sup(pm.matrix(p) - Gp, Gp);
    Eigen::MatrixXd Jac = f.jacobian(p);
    Eigen::MatrixXd c = Jac * J.mat(p).values() - J.mat(q).values() * Jac;
    double r2 = sup_abs(c) / std::max(1.0, sup_abs(Jac));
    return std::max(r1, r2);
  });
  return finish(ctx, name, 1e-8, m, ctx.points, "metric pullback and J commutation");
}

std::vector<CheckResult> suite_group_actions(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  const HopfData& data = hs.data;
  const int n = data.n;
  std::vector<CheckResult> out;

  const std::array<double, 3> flow_s = {-1.0, 0.3, 2.0};

  {
    // flow homothety at the three pinned translation lengths
    double m = 0.0;
    for (double s : flow_s) {
      CheckResult r = check_homothety(ctx, group_action_map(data, flow_element(s)), hs.OmegaA,
                                      std::exp(s), "flow");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "homothety_flow", 1e-8, m, ctx.points,
                         "translation lengths -1, 0.3, 2; factor e^s"));
  }

  {
    Sampler smp = check_sampler(ctx, "homothety_torus_angles");
    double m = 0.0;
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd angles(n);
      for (int j = 0; j < n; ++j) angles(j) = smp.uniform(0.0, 2.0 * M_PI);
      CheckResult r = check_homothety(ctx, group_action_map(data, torus_element(angles)),
                                      hs.OmegaA, 1.0, "torus");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "homothety_torus", 1e-8, m, ctx.points,
                         "independent angles; factor 1"));
  }

  {
    Sampler smp = check_sampler(ctx, "homothety_multiplicative");
    const int pairs = 10;
    double m = 0.0;
    for (int k = 0; k < pairs; ++k) {
      double s1 = smp.uniform(-2.0, 2.0);
      double s2 = smp.uniform(-2.0, 2.0);
      ChartPoint p = smp.cylinder_point(n, ctx.t_range);
      Eigen::VectorXd u, v;
      double base = 0.0;
      for (int tries = 0; tries < 50; ++tries) {
        u = smp.cylinder_tangent(p);
        v = smp.cylinder_tangent(p);
        base = hs.OmegaA.evaluate(p, u, v);
        if (std::abs(base) > 1e-3) break;
      }
      SmoothMap f1 = group_action_map(data, flow_element(s1));
      SmoothMap f2 = group_action_map(data, flow_element(s2));
      SmoothMap f12 = compose(f1, f2);
      double r1 = pullback(f1, hs.OmegaA).evaluate(p, u, v) / base;
      double r2 = pullback(f2, hs.OmegaA).evaluate(p, u, v) / base;
      double r12 = pullback(f12, hs.OmegaA).evaluate(p, u, v) / base;
      m = std::max(m, std::abs(r12 - r1 * r2) / std::max(1.0, std::abs(r1 * r2)));
    }
    out.push_back(finish(ctx, "homothety_multiplicative", 1e-9, m, pairs,
                         "composed flow factor against the product of factors"));
  }

  {
    Sampler smp = check_sampler(ctx, "torus_isometry_punctured_angles");
    double m = 0.0;
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXcd diag(n);
      for (int j = 0; j < n; ++j) diag(j) = std::polar(1.0, smp.uniform(0.0, 2.0 * M_PI));
      CheckResult r = check_holomorphic_isometry(ctx, punctured_diagonal_map(n, diag), "torus");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "torus_isometry_punctured", 1e-8, m, ctx.points));
  }

  {
    double m = 0.0;
    for (double s : flow_s) {
      CheckResult r =
          check_holomorphic_isometry(ctx, group_action_map(data, flow_element(s)), "flow");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "flow_isometry_cylinder", 1e-8, m, ctx.points));
  }

  {
    double m = 0.0;
    for (int k = 1; k <= 2; ++k) {
      CheckResult r =
          check_holomorphic_isometry(ctx, group_action_map(data, deck_element(k)), "deck");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "deck_isometry", 1e-8, m, ctx.points));
  }

  {
    DifferentialForm omega_bar_K = pullback(hs.Hinv, hs.OmegaA);
    double m = 0.0;
    for (int k = 1; k <= 2; ++k) {
      CheckResult r = check_homothety(ctx, group_action_map(data, deck_element(k)), omega_bar_K,
                                      std::exp(k * data.s), "deck");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "deck_homothety", 1e-8, m, ctx.points,
                         "deck powers 1 and 2; factor e^{k s}"));
  }

  {
    Sampler smp = check_sampler(ctx, "conjugation_diagonal");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    double m = 0.0;
    for (int k = 0; k < 5; ++k) {
      double s = smp.uniform(-1.5, 1.5);
      Eigen::VectorXd angles(n);
      for (int j = 0; j < n; ++j) angles(j) = smp.uniform(0.0, 2.0 * M_PI);
      SmoothMap composed =
          compose(hs.H, compose(group_action_map(data, flow_element(s)),
                                compose(group_action_map(data, torus_element(angles)), hs.Hinv)));
      Eigen::VectorXcd diag = conjugated_diagonal(data, s, angles);
      double mk = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
        const ChartPoint& q = pts[i];
        Eigen::VectorXd expect(2 * n);
        for (int j = 0; j < n; ++j) {
          const double x = q.x(2 * j), y = q.x(2 * j + 1);
          expect(2 * j) = diag(j).real() * x - diag(j).imag() * y;
          expect(2 * j + 1) = diag(j).imag() * x + diag(j).real() * y;
        }
        Eigen::VectorXd got = composed.apply(q).x;
        return (got - expect).cwiseAbs().maxCoeff() / std::max(1.0, q.x.cwiseAbs().maxCoeff());
      });
      m = std::max(m, mk);
    }
    out.push_back(finish(ctx, "conjugation_diagonal", 1e-10, m, ctx.points,
                         "conjugated flow and torus action against the diagonal spectrum"));
  }

  {
    Sampler smp = check_sampler(ctx, "deck_freeness");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    double m = 0.0;
    for (int k = 1; k <= 3; ++k) {
      SmoothMap gk = group_action_map(data, deck_element(k));
      double mk = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
        const double disp = (gk.apply(pts[i]).x - pts[i].x).norm();
        return 1e-6 / disp;
      });
      m = std::max(m, mk);
    }
    out.push_back(finish(ctx, "deck_freeness", 1.0, m, ctx.points,
                         "residual = 1e-6 / displacement; pass means every deck power "
                         "moves every sample by more than 1e-6"));
  }

  {
    Sampler smp = check_sampler(ctx, "torus_invariance_eta");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(n, ctx.t_range));
    double m = 0.0;
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd angles(n);
      for (int j = 0; j < n; ++j) angles(j) = smp.uniform(0.0, 2.0 * M_PI);
      DifferentialForm pb = pullback(group_action_map(data, torus_element(angles)), hs.etaA);
      double mk = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
        Eigen::VectorXd ref = one_form_row(hs.etaA, pts[i]);
        return (one_form_row(pb, pts[i]) - ref).cwiseAbs().maxCoeff() /
               std::max(1.0, ref.cwiseAbs().maxCoeff());
      });
      m = std::max(m, mk);
    }
    out.push_back(finish(ctx, "torus_invariance_eta", 1e-8, m, ctx.points));
  }

  {
    Sampler smp = check_sampler(ctx, "action_tangency");
    std::vector<ChartPoint> pts;
    std::vector<Eigen::VectorXd> vecs, angles_draws;
    for (int i = 0; i < ctx.points; ++i) {
      ChartPoint p = smp.cylinder_point(n, ctx.t_range);
      pts.push_back(p);
      vecs.push_back(smp.cylinder_tangent(p));
      Eigen::VectorXd angles(n);
      for (int j = 0; j < n; ++j) angles(j) = smp.uniform(0.0, 2.0 * M_PI);
      angles_draws.push_back(angles);
    }
    SmoothMap flow = group_action_map(data, flow_element(0.7));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      SmoothMap torus = group_action_map(data, torus_element(angles_draws[i]));
      double worst = 0.0;
      for (const SmoothMap* f : {&flow, &torus}) {
        Eigen::VectorXd pushed = f->jacobian(pts[i]) * vecs[i];
        ChartPoint q = f->apply(pts[i]);
        worst = std::max(worst, std::abs(pushed.tail(q.dim() - 1).dot(q.w())));
      }
      return worst;
    });
    out.push_back(finish(ctx, "action_tangency", 1e-10, m, ctx.points,
                         "pushforwards stay tangent to the sphere factor"));
  }

  return out;
}

// ---------------------------------------------------------------------------
// adapted coframe transition suite

LCRDecomposition analyze_lcr_rows(const AdaptedCoframe& cf, const Eigen::MatrixXd& G,
                                  const Eigen::VectorXd& pulled_theta,
                                  const Eigen::VectorXd& pulled_theta_J,
                                  const std::vector<Eigen::VectorXcd>& pulled_alpha) {
  const int d = static_cast<int>(cf.theta.size());
  const int m1 = static_cast<int>(cf.theta_alpha.size());
  LCRDecomposition dec;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(G);
  Eigen::VectorXd gi_thJ = lu.solve(cf.theta_J);
  const double denom = cf.theta_J.dot(gi_thJ);
  if (std::abs(denom) < 1e-14)
    throw std::runtime_error("analyze_lcr: degenerate anti-Lee pairing at sample point");
  dec.lambda = pulled_theta_J.dot(gi_thJ) / denom;
  if (!(dec.lambda > 0.0))
    throw std::runtime_error(
        "analyze_lcr: conformal factor is not positive; the map does not preserve the "
        "structure");
  const double sq = std::sqrt(dec.lambda);

  dec.U.resize(m1, m1);
  dec.v.resize(m1);
  double resid = 0.0;
  for (int al = 0; al < m1; ++al) {
    const Eigen::VectorXcd& row = pulled_alpha[al];
    for (int ga = 0; ga < m1; ++ga) {
      Cplx acc(0.0, 0.0);
      for (int j = 0; j < d; ++j) acc += row(j) * cf.E[ga](j);
      dec.U(al, ga) = acc / sq;
    }
    Cplx acc_anti(0.0, 0.0), acc_lee(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
      acc_anti += row(j) * cf.anti_lee(j);
      acc_lee += row(j) * cf.lee(j);
    }
    dec.v(al) = -2.0 * acc_anti;
    resid = std::max(resid, std::abs(acc_lee));
  }

  // reconstruction defect of all pulled rows
  for (int al = 0; al < m1; ++al) {
    Eigen::VectorXcd rhat = Eigen::VectorXcd::Zero(d);
    for (int be = 0; be < m1; ++be) rhat += sq * dec.U(al, be) * cf.theta_alpha[be];
    for (int j = 0; j < d; ++j) rhat(j) += dec.v(al) * Cplx(cf.theta_J(j), 0.0);
    resid = std::max(resid, (pulled_alpha[al] - rhat).cwiseAbs().maxCoeff());
  }
  resid = std::max(resid, (pulled_theta_J - dec.lambda * cf.theta_J).cwiseAbs().maxCoeff());
  dec.residual = resid;
  dec.theta_residual = (pulled_theta - cf.theta).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd gram = dec.U.adjoint() * dec.U - Eigen::MatrixXcd::Identity(m1, m1);
  dec.unitary_residual = gram.cwiseAbs().maxCoeff();
  return dec;
}

LCRDecomposition analyze_lcr_seeded(const HopfStructure& hs, const SmoothMap& f,
                                    const ChartPoint& p, const std::vector<int>& seed_order) {
  if (f.source != ChartId::PUNCTURED_CN || f.target != ChartId::PUNCTURED_CN)
    throw std::invalid_argument("analyze_lcr: punctured chart self-map expected");
  ChartPoint q = f.apply(p);
  AdaptedCoframe cfp = build_adapted_coframe_seeded(hs.g_bar, hs.J0, hs.theta_bar, p, seed_order);
  AdaptedCoframe cfq = build_adapted_coframe_seeded(hs.g_bar, hs.J0, hs.theta_bar, q, seed_order);
  Eigen::MatrixXd Jac = f.jacobian(p);
  Eigen::VectorXd pth = Jac.transpose() * cfq.theta;
  Eigen::VectorXd pthJ = Jac.transpose() * cfq.theta_J;
  std::vector<Eigen::VectorXcd> palpha;
  for (const auto& row : cfq.theta_alpha) {
    Eigen::VectorXcd pr(Jac.cols());
    for (int j = 0; j < Jac.cols(); ++j) {
      Cplx acc(0.0, 0.0);
      for (int i = 0; i < Jac.rows(); ++i) acc += row(i) * Jac(i, j);
      pr(j) = acc;
    }
    palpha.push_back(pr);
  }
  return analyze_lcr_rows(cfp, hs.g_bar.matrix(p), pth, pthJ, palpha);
}

LCRDecomposition analyze_lcr(const HopfStructure& hs, const SmoothMap& f, const ChartPoint& p) {
  std::vector<int> order(2 * hs.data.n);
  std::iota(order.begin(), order.end(), 0);
  return analyze_lcr_seeded(hs, f, p, order);
}

LCRDecomposition analyze_lcr_planted(const HopfStructure& hs, const ChartPoint& p, double lambda,
                                     const Eigen::MatrixXcd& U, const Eigen::VectorXcd& v) {
  AdaptedCoframe cf = build_adapted_coframe(hs.g_bar, hs.J0, hs.theta_bar, p);
  SynthRows rows = synthesize_rows(cf, lambda, U, v);
  return analyze_lcr_rows(cf, hs.g_bar.matrix(p), rows.theta, rows.theta_J, rows.alpha);
}

CheckResult check_perp_preservation(const SuiteContext& ctx, const SmoothMap& f,
                                    const std::string& label) {
  const HopfStructure& hs = *ctx.hs;
  std::string name = label.empty() ? "perp_preservation" : "perp_preservation_" + label;
  Sampler smp = check_sampler(ctx, name);
  std::vector<ChartPoint> pts;
  for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
  double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
    const ChartPoint& p = pts[i];
    ChartPoint q = f.apply(p);
    AdaptedCoframe cfp = build_adapted_coframe(hs.g_bar, hs.J0, hs.theta_bar, p);
    AdaptedCoframe cfq = build_adapted_coframe(hs.g_bar, hs.J0, hs.theta_bar, q);
    Eigen::MatrixXd Jac = f.jacobian(p);
    Eigen::MatrixXd Gq = hs.g_bar.matrix(q);
    double worst = 0.0;
    for (size_t al = 0; al < cfp.E.size(); ++al) {
      for (const Eigen::VectorXd* e : {&cfp.E[al], &cfp.JE[al]}) {
        Eigen::VectorXd u = Jac * (*e);
        worst = std::max(worst, std::abs(u.dot(Gq * cfq.lee)));
        worst = std::max(worst, std::abs(u.dot(Gq * cfq.anti_lee)));
      }
    }
    return worst;
  });
  return finish(ctx, name, 1e-7, m, ctx.points,
                "pushed perp vectors stay g-orthogonal to the Lee plane");
}

std::vector<CheckResult> suite_lcr(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  const int n = hs.data.n;
  std::vector<CheckResult> out;

  {
    Sampler smp = check_sampler(ctx, "lcr_torus_battery");
    const int nmaps = 20;
    std::vector<SmoothMap> maps;
    std::vector<ChartPoint> pts;
    for (int k = 0; k < nmaps; ++k) {
      Eigen::VectorXcd diag(n);
      for (int j = 0; j < n; ++j) diag(j) = std::polar(1.0, smp.uniform(0.0, 2.0 * M_PI));
      maps.push_back(punctured_diagonal_map(n, diag));
      for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    }
    Eigen::VectorXd worst =
        max_over_indices_vec(nmaps * ctx.points, ctx.parallel, 4, [&](int idx) {
          const SmoothMap& f = maps[idx / ctx.points];
          LCRDecomposition dec = analyze_lcr(hs, f, pts[idx]);
          Eigen::VectorXd r(4);
          r(0) = std::abs(dec.lambda - 1.0);
          r(1) = dec.v.cwiseAbs().maxCoeff();
          r(2) = dec.unitary_residual;
          r(3) = std::max(dec.residual, dec.theta_residual);
          return r;
        });
    out.push_back(finish(ctx, "lcr_lambda_one", 1e-8, worst(0), ctx.points, "20 torus maps"));
    out.push_back(finish(ctx, "lcr_v_zero", 1e-8, worst(1), ctx.points, "20 torus maps"));
    out.push_back(finish(ctx, "lcr_unitarity", 1e-8, worst(2), ctx.points, "20 torus maps"));
    out.push_back(finish(ctx, "lcr_residual", 1e-7, worst(3), ctx.points,
                         "coframe reconstruction defect over 20 torus maps"));
  }

  {
    Sampler smp = check_sampler(ctx, "lcr_deck");
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(draw_punctured(smp, hs, ctx.t_range));
    SmoothMap g1 = group_action_map(hs.data, deck_element(1));
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      LCRDecomposition dec = analyze_lcr(hs, g1, pts[i]);
      return std::max({std::abs(dec.lambda - 1.0), dec.v.cwiseAbs().maxCoeff(),
                       dec.unitary_residual, dec.residual, dec.theta_residual});
    });
    out.push_back(finish(ctx, "lcr_deck", 1e-7, m, ctx.points,
                         "deck generator acts as a holomorphic isometry on the coframe"));
  }

  {
    Sampler smp = check_sampler(ctx, "lcr_plant_recover");
    const int count = std::min(ctx.points, 20);
    std::vector<ChartPoint> pts;
    std::vector<double> lam0;
    std::vector<Eigen::MatrixXcd> U0;
    std::vector<Eigen::VectorXcd> v0;
    const int m1 = n - 1;
    for (int i = 0; i < count; ++i) {
      pts.push_back(draw_punctured(smp, hs, ctx.t_range));
      lam0.push_back(i == 0 ? 1.69 : smp.uniform(0.5, 2.5));
      Eigen::MatrixXcd Z(m1, m1);
      for (int r = 0; r < m1; ++r)
        for (int c = 0; c < m1; ++c) Z(r, c) = Cplx(smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0));
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
      Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(m1, m1);
      U0.push_back(Q);
      Eigen::VectorXcd vv(m1);
      for (int r = 0; r < m1; ++r) vv(r) = 0.3 * Cplx(smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0));
      v0.push_back(vv);
    }
    double m = max_over_indices(count, ctx.parallel, [&](int i) {
      LCRDecomposition dec = analyze_lcr_planted(hs, pts[i], lam0[i], U0[i], v0[i]);
      double r = std::abs(dec.lambda - lam0[i]);
      r = std::max(r, (dec.U - U0[i]).cwiseAbs().maxCoeff());
      r = std::max(r, (dec.v - v0[i]).cwiseAbs().maxCoeff());
      r = std::max(r, dec.residual);
      r = std::max(r, dec.theta_residual);
      return r;
    });
    out.push_back(finish(ctx, "lcr_plant_recover", 1e-7, m, count,
                         "planted transition data recovered from synthesized rows"));
  }

  {
    Sampler smp = check_sampler(ctx, "lcr_gauge_invariance");
    const int count = std::min(ctx.points, 20);
    const int m1 = n - 1;
    std::vector<ChartPoint> pts;
    std::vector<double> lam0;
    std::vector<Eigen::MatrixXcd> U0;
    std::vector<Eigen::VectorXcd> v0;
    for (int i = 0; i < count; ++i) {
      pts.push_back(draw_punctured(smp, hs, ctx.t_range));
      lam0.push_back(smp.uniform(0.5, 2.5));
      Eigen::MatrixXcd Z(m1, m1);
      for (int r = 0; r < m1; ++r)
        for (int c = 0; c < m1; ++c) Z(r, c) = Cplx(smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0));
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
      U0.push_back(qr.householderQ() * Eigen::MatrixXcd::Identity(m1, m1));
      Eigen::VectorXcd vv(m1);
      for (int r = 0; r < m1; ++r) vv(r) = 0.3 * Cplx(smp.uniform(-1.0, 1.0), smp.uniform(-1.0, 1.0));
      v0.push_back(vv);
    }
    std::vector<int> order(2 * n), reversed(2 * n);
    std::iota(order.begin(), order.end(), 0);
    for (int j = 0; j < 2 * n; ++j) reversed[j] = 2 * n - 1 - j;
    double m = max_over_indices(count, ctx.parallel, [&](int i) {
      AdaptedCoframe cf1 =
          build_adapted_coframe_seeded(hs.g_bar, hs.J0, hs.theta_bar, pts[i], order);
      AdaptedCoframe cf2 =
          build_adapted_coframe_seeded(hs.g_bar, hs.J0, hs.theta_bar, pts[i], reversed);
      SynthRows rows = synthesize_rows(cf1, lam0[i], U0[i], v0[i]);
      Eigen::MatrixXd G = hs.g_bar.matrix(pts[i]);
      LCRDecomposition d1 = analyze_lcr_rows(cf1, G, rows.theta, rows.theta_J, rows.alpha);
      LCRDecomposition d2 = analyze_lcr_rows(cf2, G, rows.theta, rows.theta_J, rows.alpha);
      double r = std::abs(d1.lambda - d2.lambda);
      r = std::max(r, std::abs(d1.v.norm() - d2.v.norm()));
      r = std::max(r, d2.unitary_residual);
      return r;
    });
    out.push_back(finish(ctx, "lcr_gauge_invariance", 1e-8, m, count,
                         "conformal factor and |v| agree across coframe gauges"));
  }

  {
    Sampler smp = check_sampler(ctx, "perp_preservation_angles");
    double m = 0.0;
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXcd diag(n);
      for (int j = 0; j < n; ++j) diag(j) = std::polar(1.0, smp.uniform(0.0, 2.0 * M_PI));
      CheckResult r = check_perp_preservation(ctx, punctured_diagonal_map(n, diag), "");
      m = std::max(m, r.max_residual);
    }
    out.push_back(finish(ctx, "perp_preservation", 1e-7, m, ctx.points, "5 torus maps"));
  }

  return out;
}

// ---------------------------------------------------------------------------
// rescaling recipe suite

std::vector<CheckResult> suite_theorem_a(const SuiteContext& ctx) {
  const HopfStructure& hs = *ctx.hs;
  std::vector<CheckResult> out;

  auto rescaled = theorem_A_rescale(hs.OmegaA, hs.xi, hs.JA);
  const DifferentialForm& Theta = rescaled.first;
  const DifferentialForm& lee = rescaled.second;

  auto cyl_points = [&](const std::string& name) {
    Sampler smp = check_sampler(ctx, name);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < ctx.points; ++i) pts.push_back(smp.cylinder_point(hs.data.n, ctx.t_range));
    return pts;
  };

  {
    auto pts = cyl_points("rescale_matches_form");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      return sup_abs(Theta.coeff(pts[i]).values() - hs.omega_tilde.coeff(pts[i]).values());
    });
    out.push_back(finish(ctx, "rescale_matches_form", 1e-9, m, ctx.points));
  }

  {
    auto pts = cyl_points("rescale_lee_form");
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      Eigen::VectorXd row = one_form_row(lee, pts[i]);
      row(0) += 1.0;
      return row.cwiseAbs().maxCoeff();
    });
    out.push_back(finish(ctx, "rescale_lee_form", 1e-9, m, ctx.points, "expected row is -dt"));
  }

  {
    auto pts = cyl_points("rescale_scale_invariance");
    auto rescaled_c = theorem_A_rescale(scaled_form(hs.OmegaA, 3.7), hs.xi, hs.JA);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      double r1 = sup_abs(rescaled_c.first.coeff(pts[i]).values() - Theta.coeff(pts[i]).values());
      double r2 =
          (one_form_row(rescaled_c.second, pts[i]) - one_form_row(lee, pts[i])).cwiseAbs().maxCoeff();
      return std::max(r1, r2);
    });
    out.push_back(finish(ctx, "rescale_scale_invariance", 1e-10, m, ctx.points,
                         "output invariant under scaling the input form by 3.7"));
  }

  {
    auto pts = cyl_points("rescale_s_value");
    ScalarField s = rescale_s_function(hs.OmegaA, hs.xi, hs.JA);
    double m = max_over_indices(ctx.points, ctx.parallel, [&](int i) {
      const double expect = std::exp(pts[i].t());
      return std::abs(s.value(pts[i]) - expect) / expect;
    });
    out.push_back(finish(ctx, "rescale_s_value", 1e-10, m, ctx.points,
                         "normalization function equals e^t"));
  }

  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_lck(const SuiteContext& ctx) { return suite_lck(ctx); }
std::vector<CheckResult> check_parallel_lee(const SuiteContext& ctx) {
  return suite_parallel_lee(ctx);
}
std::vector<CheckResult> check_contact_pseudohermitian(const SuiteContext& ctx) {
  return suite_contact(ctx);
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteContext& ctx) {
  if (name == "lck") return suite_lck(ctx);
  if (name == "parallel_lee") return suite_parallel_lee(ctx);
  if (name == "contact") return suite_contact(ctx);
  if (name == "biholomorphism") return suite_biholomorphism(ctx);
  if (name == "group_actions") return suite_group_actions(ctx);
  if (name == "lcr") return suite_lcr(ctx);
  if (name == "theorem_a") return suite_theorem_a(ctx);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

}  // namespace lck
