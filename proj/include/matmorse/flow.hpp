#pragma once

// Gradient-flow integration on the embedded manifolds.  The vector field is
// the ambient closed-form gradient (sign chosen by direction); steps are
// classical fixed-step RK4 followed by a retraction back onto the manifold.
// f increases along the ascending flow with df/dt = |grad f|^2, and every
// limit is a critical point; the integrator stops on a gradient-norm
// threshold or at max_t and reports stalls as non-convergence.
//
// Direction naming: "ascending" applies +grad f, so a trajectory that
// converges to p lies in the descending cell S(p) (the flows with limit p
// at t -> +infinity); "descending" applies -grad f and lands in ascending
// cells T(p).

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>

#include "matmorse/morse.hpp"

namespace matmorse {

inline constexpr double kFlowDt = 0.01;
inline constexpr double kFlowMaxT = 200.0;
inline constexpr double kFlowGradStop = 1e-8;
inline constexpr double kFlowLimitDist = 1e-6;

enum class FlowDirection { Ascending, Descending };

struct Trajectory {
  FlowDirection direction = FlowDirection::Ascending;
  std::vector<double> times;
  std::vector<ManifoldPoint> points;
  std::vector<double> f_values;
  std::vector<double> grad_norms;
};

struct FlowResult {
  std::optional<std::vector<int>> limit_label;
  bool converged = false;
  int steps = 0;
  double final_grad_norm = 0.0;
};

// nearest critical point; the distance must clear half the minimal pairwise
// separation of the critical set, otherwise the query is ambiguous
inline std::vector<int> classify_limit(const MorseSetup& s, const ManifoldPoint& p) {
  const auto critical = enumerate_critical(s);
  double min_pair = 1e300;
  for (std::size_t i = 0; i < critical.size(); ++i)
    for (std::size_t j = i + 1; j < critical.size(); ++j)
      min_pair = std::min(min_pair, distance(critical[i].point.x, critical[j].point.x));
  double best = 1e300;
  const CriticalPoint* who = nullptr;
  for (const auto& c : critical) {
    const double dist = distance(p.x, c.point.x);
    if (dist < best) { best = dist; who = &c; }
  }
  if (who == nullptr || best >= 0.5 * min_pair)
    throw std::runtime_error("classify_limit: point is not near any critical point");
  return who->label;
}

inline std::pair<Trajectory, FlowResult> integrate(const MorseSetup& s,
                                                   const ManifoldPoint& x0,
                                                   FlowDirection direction,
                                                   double dt = kFlowDt,
                                                   double max_t = kFlowMaxT,
                                                   double grad_stop = kFlowGradStop) {
  require_member(x0);
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  const double sign = direction == FlowDirection::Ascending ? 1.0 : -1.0;
  auto field = [&](const Matrix& y) { return gradient_field(s, y).scaled(sign); };

  Trajectory traj;
  traj.direction = direction;
  FlowResult result;

  ManifoldPoint p = x0;
  double t = 0.0;
  auto record = [&](double time, const ManifoldPoint& q, double gn) {
    traj.times.push_back(time);
    traj.points.push_back(q);
    traj.f_values.push_back(f_value(s, q));
    traj.grad_norms.push_back(gn);
  };

  double gn = norm(gradient_field(s, p.x));
  record(t, p, gn);
  while (gn >= grad_stop && t < max_t) {
    const Matrix k1 = field(p.x);
    const Matrix k2 = field(p.x + k1.scaled(0.5 * dt));
    const Matrix k3 = field(p.x + k2.scaled(0.5 * dt));
    const Matrix k4 = field(p.x + k3.scaled(dt));
    const Matrix y = p.x + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(dt / 6.0);
    p = retract(s.descriptor, y);
    t += dt;
    gn = norm(gradient_field(s, p.x));
    record(t, p, gn);
    ++result.steps;
  }

  result.final_grad_norm = gn;
  try {
    const std::vector<int> label = classify_limit(s, p);
    const double dist = distance(p.x, critical_point(s, label).point.x);
    result.limit_label = label;
    result.converged = gn < grad_stop && dist <= kFlowLimitDist;
  } catch (const std::runtime_error&) {
    result.limit_label.reset();
    result.converged = false;
  }
  return {std::move(traj), result};
}

// the linearized flow in Morse coordinates, f = f(0) - |x|^2 + |y|^2:
// phi(t) = (a e^{-2t}, b e^{2t}), the analytic oracle for the integrator
inline std::pair<std::vector<double>, std::vector<double>> model_flow(
    const std::vector<double>& a_vec, const std::vector<double>& b_vec, double t) {
  std::vector<double> x(a_vec), y(b_vec);
  for (double& v : x) v *= std::exp(-2.0 * t);
  for (double& v : y) v *= std::exp(2.0 * t);
  return {std::move(x), std::move(y)};
}

// RK4 on the model field (-2x, 2y) against the closed form; returns the
// largest euclidean deviation over the grid
inline double model_flow_rk4_max_error(const std::vector<double>& a_vec,
                                       const std::vector<double>& b_vec,
                                       double t_end, double dt) {
  std::vector<double> x(a_vec), y(b_vec);
  auto step_component = [&](std::vector<double>& v, double rate) {
    for (double& c : v) {
      const double k1 = rate * c;
      const double k2 = rate * (c + 0.5 * dt * k1);
      const double k3 = rate * (c + 0.5 * dt * k2);
      const double k4 = rate * (c + dt * k3);
      c += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  };
  double max_err = 0.0;
  int nsteps = static_cast<int>(std::round(t_end / dt));
  for (int i = 1; i <= nsteps; ++i) {
    step_component(x, -2.0);
    step_component(y, 2.0);
    const auto exact = model_flow(a_vec, b_vec, i * dt);
    double err2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) err2 += (x[j] - exact.first[j]) * (x[j] - exact.first[j]);
    for (std::size_t j = 0; j < y.size(); ++j) err2 += (y[j] - exact.second[j]) * (y[j] - exact.second[j]);
    max_err = std::max(max_err, std::sqrt(err2));
  }
  return max_err;
}

struct MonotonicityReport {
  double min_df_dt = 0.0;        // signed; >= -roundoff for ascending flows
  double max_rel_mismatch = 0.0; // |df/dt - (+/-)|grad|^2| relative, away from critical points
};

inline MonotonicityReport monotonicity_report(const Trajectory& traj,
                                              double plateau_grad = 1e-4) {
  MonotonicityReport rep;
  const double sign = traj.direction == FlowDirection::Ascending ? 1.0 : -1.0;
  if (traj.times.size() < 2) return rep;
  rep.min_df_dt = 1e300;
  for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
    const double dt = traj.times[i + 1] - traj.times[i];
    const double df_dt = (traj.f_values[i + 1] - traj.f_values[i]) / dt;
    rep.min_df_dt = std::min(rep.min_df_dt, df_dt);
    const double g0 = traj.grad_norms[i], g1 = traj.grad_norms[i + 1];
    if (std::min(g0, g1) <= plateau_grad) continue;
    const double g2_mid = 0.5 * (g0 * g0 + g1 * g1);
    rep.max_rel_mismatch =
        std::max(rep.max_rel_mismatch, std::abs(df_dt - sign * g2_mid) / g2_mid);
  }
  if (rep.min_df_dt == 1e300) rep.min_df_dt = 0.0;
  return rep;
}

struct CensusResult {
  std::map<std::vector<int>, int> counts;
  int failures = 0;
};

// ascending flow from seeded random starts, tallied by limit label; the top
// descending cell carries full measure, so its label dominates
inline CensusResult descending_cell_census(const MorseSetup& s, int samples,
                                           std::uint64_t seed, double dt = kFlowDt,
                                           double max_t = kFlowMaxT) {
  CensusResult census;
  for (int i = 0; i < samples; ++i) {
    const ManifoldPoint x0 = random_point(s.descriptor, mix_seed(seed, 7000 + i));
    const auto [traj, result] = integrate(s, x0, FlowDirection::Ascending, dt, max_t);
    if (result.converged && result.limit_label)
      ++census.counts[*result.limit_label];
    else
      ++census.failures;
  }
  return census;
}

// CSV columns: t, f, grad_norm, then the flattened matrix entries in
// row-major order with one column per real component
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  static const char* comp_names[4] = {"re", "i", "j", "k"};
  os << "t,f,grad_norm";
  if (!traj.points.empty()) {
    const Matrix& x = traj.points.front().x;
    const int dims = real_dim(x.field());
    for (int r = 0; r < x.rows(); ++r)
      for (int c = 0; c < x.cols(); ++c)
        for (int d = 0; d < dims; ++d) {
          os << ",x_" << r << "_" << c;
          if (dims > 1) os << "_" << comp_names[d];
        }
  }
  os << "\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << traj.times[i] << "," << traj.f_values[i] << "," << traj.grad_norms[i];
    const Matrix& x = traj.points[i].x;
    const int dims = real_dim(x.field());
    for (int r = 0; r < x.rows(); ++r)
      for (int c = 0; c < x.cols(); ++c)
        for (int d = 0; d < dims; ++d) os << "," << x(r, c).c[d];
    os << "\n";
  }
}

}  // namespace matmorse
