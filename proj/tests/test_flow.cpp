#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "matmorse/flow.hpp"

using namespace matmorse;

TEST_CASE("a critical point is a stationary trajectory") {
  const MorseSetup s = make_setup(grass(4, 2));
  const CriticalPoint c = critical_point(s, {1, 3});
  const auto [traj, result] = integrate(s, c.point, FlowDirection::Ascending);
  CHECK(traj.times.size() == 1);
  CHECK(result.converged);
  CHECK(result.steps == 0);
  REQUIRE(result.limit_label.has_value());
  CHECK(*result.limit_label == std::vector<int>{1, 3});
}

TEST_CASE("ascending flow returns to the vertex from inside the descending cell") {
  const MorseSetup s = make_setup(orth(3, Field::R));
  const CriticalPoint c = critical_point(s, {1, 2});  // index 1 saddle
  // beta_{1,2} on I x I is a negative eigenvector
  const Matrix v = basis_beta(Field::R, 3, 0, 1);
  const ManifoldPoint x0 = retract(s.descriptor, c.point.x + v.scaled(1e-3 / norm(v)));
  const auto [traj, result] = integrate(s, x0, FlowDirection::Ascending);
  CHECK(result.converged);
  REQUIRE(result.limit_label.has_value());
  CHECK(*result.limit_label == std::vector<int>{1, 2});
}

TEST_CASE("ascending flow from random starts lands on enumerated critical points") {
  const MorseSetup s = make_setup(grass(4, 2));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ManifoldPoint x0 = random_point(s.descriptor, seed);
    const auto [traj, result] = integrate(s, x0, FlowDirection::Ascending, 0.01, 100.0);
    CAPTURE(seed);
    CHECK(result.converged);
    REQUIRE(result.limit_label.has_value());
    CHECK(result.limit_label->size() == 2);
    for (std::size_t i = 0; i + 1 < traj.f_values.size(); ++i)
      CHECK(traj.f_values[i + 1] >= traj.f_values[i] - 1e-12);
    for (const auto& p : traj.points) CHECK(membership_residual(p) <= 1e-8);
  }
}

TEST_CASE("classification of limits") {
  const MorseSetup s = make_setup(grass(4, 2));
  CHECK(classify_limit(s, sigma_point(s.descriptor, {1, 3})) == std::vector<int>{1, 3});

  const MorseSetup u3 = make_setup(orth(3, Field::C));
  const CriticalPoint c0 = critical_point(u3, {});
  Rng rng(3);
  Matrix bump = rng.gaussian_matrix(Field::C, 3, 3);
  const ManifoldPoint near{u3.descriptor,
                           retract(u3.descriptor, c0.point.x + bump.scaled(1e-7 / norm(bump))).x};
  CHECK(classify_limit(u3, near) == std::vector<int>{});

  // the midpoint between two critical matrices is ambiguous
  const Matrix mid = (sigma_point(s.descriptor, {1, 2}).x +
                      sigma_point(s.descriptor, {3, 4}).x).scaled(0.5);
  CHECK_THROWS_AS((void)classify_limit(s, ManifoldPoint{s.descriptor, mid}),
                  std::runtime_error);
}

TEST_CASE("model flow closed form") {
  const std::vector<double> a{1.0, -2.0}, b{0.5};
  const auto at0 = model_flow(a, b, 0.0);
  CHECK(at0.first == a);
  CHECK(at0.second == b);

  // with b = 0 the flow decays into the origin (descending-cell criterion)
  const auto decayed = model_flow(a, {}, 10.0);
  for (double v : decayed.first) CHECK(std::abs(v) < 1e-8);

  CHECK(model_flow_rk4_max_error(a, b, 3.0, 1e-3) <= 1e-8);
}

TEST_CASE("integrator shows fourth-order error decay on the model") {
  const std::vector<double> a{1.0, 0.3}, b{0.2, -0.4};
  const double e1 = model_flow_rk4_max_error(a, b, 2.0, 2e-3);
  const double e2 = model_flow_rk4_max_error(a, b, 2.0, 1e-3);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("monotonicity report") {
  const MorseSetup s = make_setup(orth(3, Field::R));

  // stationary trajectory reports zeros
  const CriticalPoint c = critical_point(s, {});
  const auto [stay, r0] = integrate(s, c.point, FlowDirection::Ascending);
  const MonotonicityReport flat = monotonicity_report(stay);
  CHECK(std::abs(flat.min_df_dt) < 1e-12);
  CHECK(flat.max_rel_mismatch < 1e-12);

  const ManifoldPoint x0 = random_point(s.descriptor, 4);
  const auto [up, ru] = integrate(s, x0, FlowDirection::Ascending);
  const MonotonicityReport rep = monotonicity_report(up);
  CHECK(rep.min_df_dt >= -1e-12);
  CHECK(rep.max_rel_mismatch <= 1e-3);

  const auto [down, rd] = integrate(s, x0, FlowDirection::Descending);
  for (std::size_t i = 0; i + 1 < down.f_values.size(); ++i)
    CHECK(down.f_values[i + 1] <= down.f_values[i] + 1e-12);
  CHECK(monotonicity_report(down).max_rel_mismatch <= 1e-3);

  // ascending and descending limits from the same start differ in f
  REQUIRE(ru.converged);
  REQUIRE(rd.converged);
  CHECK(*ru.limit_label != *rd.limit_label);
  CHECK(up.f_values.back() > down.f_values.back());
}

TEST_CASE("census concentrates on the top cell") {
  const MorseSetup s = make_setup(grass(4, 2));
  const CensusResult census = descending_cell_census(s, 30, 99, 0.01, 100.0);
  int total = 0;
  for (const auto& [label, count] : census.counts) total += count;
  CHECK(total + census.failures == 30);
  const std::vector<int> top{3, 4};  // index 8 = dim
  REQUIRE(census.counts.count(top) == 1);
  CHECK(census.counts.at(top) >= 25);

  CHECK(descending_cell_census(s, 0, 1).counts.empty());
}

TEST_CASE("flow limits classify into the enumerated critical set for every kind") {
  for (const auto& d : {orth(3, Field::R), orth(2, Field::C), special_orth(3),
                        lagrangian(2), cplx_str(2), flag_u(3)}) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto [traj, result] =
          integrate(s, random_point(d, seed), FlowDirection::Ascending);
      CHECK(result.converged);
      CHECK(result.limit_label.has_value());
    }
  }
}

TEST_CASE("trajectory CSV export") {
  const MorseSetup s = make_setup(orth(2, Field::C));
  const auto [traj, result] =
      integrate(s, random_point(s.descriptor, 8), FlowDirection::Ascending, 0.05, 5.0);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header.substr(0, 15) == "t,f,grad_norm,x");
  // 3 lead columns + 2x2 complex entries = 11 columns
  CHECK(std::count(header.begin(), header.end(), ',') == 10);
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == traj.times.size());

  CHECK_THROWS_AS((void)integrate(s, random_point(s.descriptor, 8),
                                  FlowDirection::Ascending, -1.0),
                  std::invalid_argument);
}
