#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmorse/morse.hpp"

using namespace matmorse;

namespace {
std::vector<ManifoldDescriptor> desk_descriptors() {
  return {orth(3, Field::R), orth(2, Field::C), orth(2, Field::H), special_orth(3),
          grass(4, 2),       lagrangian(3),     cplx_str(2),       flag_u(3)};
}
}  // namespace

TEST_CASE("f values on fixed points") {
  const MorseSetup s = make_setup(orth(2, Field::R));  // lambda = (1,2)
  const ManifoldPoint id{s.descriptor, Matrix::identity(Field::R, 2)};
  CHECK(f_value(s, id) == doctest::Approx(1.0));
  CHECK(f_value(s, sigma_point(s.descriptor, {1})) == doctest::Approx(5.0));
}

TEST_CASE("norm expansion agrees with the structured shortcut on random points") {
  for (const auto& d : desk_descriptors()) {
    const MorseSetup s = make_setup(d);
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
      CHECK_NOTHROW((void)f_value(s, random_point(d, seed)));  // throws on mismatch
  }
}

TEST_CASE("gradient equals the projected ambient gradient") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const ManifoldPoint p = random_point(d, seed);
      const Matrix g = gradient_closed(s, p);
      CHECK(norm(g - tangent_project(p, (p.x - s.a).scaled(2.0))) < 1e-9);
      CHECK(norm(normal_project(p, g)) < 1e-9);
    }
  }
}

TEST_CASE("critical point enumeration counts") {
  CHECK(enumerate_critical(make_setup(grass(4, 2))).size() == 6);
  const auto u2 = enumerate_critical(make_setup(orth(2, Field::C)));
  REQUIRE(u2.size() == 4);
  CHECK(u2[0].label == std::vector<int>{});
  CHECK(u2[3].label == std::vector<int>{2});  // sorted label order
  CHECK(enumerate_critical(make_setup(flag_u(3))).size() == 6);
  CHECK(enumerate_critical(make_setup(special_orth(3))).size() == 4);
}

TEST_CASE("closed-form indices on the quoted examples") {
  CHECK(index_closed(make_setup(orth(3, Field::R)), {1, 2}) == 1);
  CHECK(index_closed(make_setup(grass(4, 2)), {2, 4}) == 6);
  CHECK(index_closed(make_setup(lagrangian(3)), {1, 3}) == 4);
  CHECK(index_closed(make_setup(flag_u(3)), {2, 1, 3}) == 2);
  CHECK(index_closed(make_setup(orth(2, Field::H)), {2}) == 7);
  CHECK(index_closed(make_setup(cplx_str(3)), {1, 3}) == 4);
  CHECK_THROWS_AS((void)index_closed(make_setup(grass(4, 2)), {1}), std::invalid_argument);
  CHECK_THROWS_AS((void)index_closed(make_setup(orth(3, Field::R)), {0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)index_closed(make_setup(flag_u(3)), {1, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("Hessian eigenvalue table at sigma_I") {
  // Grass: b_{s,t} with s in I, t in J is an eigenvector with (l_t - l_s)
  const MorseSetup sg = make_setup(grass(4, 2));
  const CriticalPoint cg = critical_point(sg, {1, 2});
  const Matrix b13 = basis_b(Field::C, 4, 0, 2);
  CHECK(norm(hessian_apply(sg, cg, b13) - b13.scaled(3.0 - 1.0)) < 1e-12);

  // O(3;R): beta_{s,t} on I x I picks up -(l_t + l_s)
  const MorseSetup so = make_setup(orth(3, Field::R));
  const CriticalPoint co = critical_point(so, {1, 2});
  const Matrix beta12 = basis_beta(Field::R, 3, 0, 1);
  CHECK(norm(hessian_apply(so, co, beta12) + beta12.scaled(1.0 + 2.0)) < 1e-12);

  // zero maps to zero
  CHECK(norm(hessian_apply(sg, cg, Matrix(Field::C, 4, 4))) == doctest::Approx(0.0));

  // non-tangent input is rejected
  CHECK_THROWS_AS((void)hessian_apply(sg, cg, Matrix::identity(Field::C, 4)),
                  std::invalid_argument);
}

TEST_CASE("canonical tangent bases diagonalize the Hessian exactly") {
  for (const auto& d : {grass(4, 2), orth(3, Field::R), orth(4, Field::R),
                        lagrangian(2), lagrangian(3), special_orth(4)}) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (const auto& c : enumerate_critical(s)) {
      const CanonicalBasis basis = canonical_tangent_basis(s, c);
      CHECK(basis.canonical);
      CHECK(static_cast<int>(basis.vectors.size()) == d.real_dimension());
      for (const auto& lt : basis.vectors) {
        CHECK(tangent_equation_residual(c.point, lt.vector) < 1e-12);
        CHECK(norm(hessian_apply(s, c, lt.vector) - lt.vector.scaled(lt.eigenvalue)) <
              1e-10);
      }
    }
  }
}

TEST_CASE("canonical basis counts on the quoted cases") {
  const MorseSetup sg = make_setup(grass(4, 2));
  CHECK(canonical_tangent_basis(sg, critical_point(sg, {1, 2})).vectors.size() == 8);
  const MorseSetup so = make_setup(orth(3, Field::R));
  CHECK(canonical_tangent_basis(so, critical_point(so, {1, 2})).vectors.size() == 3);
  const MorseSetup sl = make_setup(lagrangian(2));
  CHECK(canonical_tangent_basis(sl, critical_point(sl, {1})).vectors.size() == 3);
  // unsupported kinds fall back to the numeric frame
  const MorseSetup su = make_setup(orth(2, Field::C));
  const CanonicalBasis fb = canonical_tangent_basis(su, critical_point(su, {1}));
  CHECK_FALSE(fb.canonical);
  CHECK(static_cast<int>(fb.vectors.size()) == su.descriptor.real_dimension());
}

TEST_CASE("Hessian is symmetric as a bilinear form") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (const auto& c : enumerate_critical(s)) {
      const Matrix u = random_tangent(c.point, 101);
      const Matrix v = random_tangent(c.point, 202);
      const double lhs = inner(hessian_apply(s, c, u), v);
      const double rhs = inner(u, hessian_apply(s, c, v));
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
      // the image stays tangent
      CHECK(norm(normal_project(c.point, hessian_apply(s, c, u))) <
            1e-9 * std::max(1.0, norm(u)));
    }
  }
}

TEST_CASE("closed-form Hessian matches the gradient difference quotient") {
  for (const auto& d : {grass(4, 2), orth(3, Field::R), orth(2, Field::C),
                        orth(2, Field::H), lagrangian(3), cplx_str(2), special_orth(3)}) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (const auto& c : enumerate_critical(s)) {
      const Matrix u = random_tangent(c.point, 7);
      const Matrix fd = detail::hessian_fd_forward(s, c, u);
      CHECK(norm(hessian_apply(s, c, u) - fd) < 1e-5 * norm(u));
    }
  }
}

TEST_CASE("numeric index equals the closed form everywhere") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    for (const auto& c : enumerate_critical(s)) {
      CAPTURE(label_string(d, c.label));
      CHECK(index_numeric(s, c) == c.index);
    }
  }
  // the quoted larger case
  const MorseSetup g52 = make_setup(grass(5, 2));
  for (const auto& c : enumerate_critical(g52)) CHECK(index_numeric(g52, c) == c.index);
  // Sp(2), I = {2}: 4*2 - 1 = 7 from the signature
  const MorseSetup sp2 = make_setup(orth(2, Field::H));
  const CriticalPoint c2 = critical_point(sp2, {2});
  CHECK(index_numeric(sp2, c2) == 7);
}

TEST_CASE("sigma_empty is the minimum, the top label fills the dimension") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    const MorseSetup s = make_setup(d);
    const auto critical = enumerate_critical(s);
    double fmin = 1e300;
    int index_of_min = -1, max_index = -1;
    for (const auto& c : critical) {
      if (c.f < fmin) { fmin = c.f; index_of_min = c.index; }
      max_index = std::max(max_index, c.index);
    }
    CHECK(index_of_min == 0);
    CHECK(max_index == d.real_dimension());
  }
}

TEST_CASE("Poincare polynomials of the small spaces") {
  auto coeffs = [](const MorseSetup& s, Ring r) { return poincare(s, r).front().coeff; };

  CHECK(coeffs(make_setup(orth(2, Field::C)), Ring::Z) ==
        std::vector<long long>{1, 1, 0, 1, 1});
  CHECK(coeffs(make_setup(grass(4, 2)), Ring::Z) ==
        std::vector<long long>{1, 0, 1, 0, 2, 0, 1, 0, 1});
  CHECK(coeffs(make_setup(special_orth(3)), Ring::Z2) ==
        std::vector<long long>{1, 1, 1, 1});
  // LG(3) over Z2: (1+t)(1+t^2)(1+t^3)
  CHECK(coeffs(make_setup(lagrangian(3)), Ring::Z2) ==
        std::vector<long long>{1, 1, 1, 2, 1, 1, 1});
  CHECK(coeffs(make_setup(flag_u(3)), Ring::Z) ==
        std::vector<long long>{1, 0, 2, 0, 2, 0, 1});

  CHECK_THROWS_AS((void)poincare(make_setup(special_orth(3)), Ring::Z),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)poincare(make_setup(lagrangian(3)), Ring::Z),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)poincare(make_setup(orth(3, Field::R)), Ring::Z),
                  std::invalid_argument);
}

TEST_CASE("CplxStr Betti data is reported per Pfaffian component") {
  const MorseSetup s = make_setup(cplx_str(3));
  const auto comps = poincare(s, Ring::Z);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].component == "Pf>0");
  CHECK(comps[0].coeff == std::vector<long long>{1, 0, 1, 0, 1, 0, 1});
  CHECK(comps[1].coeff == std::vector<long long>{1, 0, 1, 0, 1, 0, 1});
  CHECK(comps[0].total() + comps[1].total() == 8);
}

TEST_CASE("Poincare duality where the counting is perfect over Z") {
  for (const auto& d : {grass(4, 2), grass(5, 2), orth(2, Field::C), orth(3, Field::C),
                        orth(2, Field::H), cplx_str(3), flag_u(3)}) {
    CAPTURE(d.name());
    for (const auto& p : poincare(make_setup(d), Ring::Z)) {
      const int dim = d.real_dimension();
      for (int deg = 0; deg <= dim; ++deg) CHECK(p.coeff[deg] == p.coeff[dim - deg]);
    }
  }
}

TEST_CASE("Euler characteristics") {
  CHECK(euler_characteristic(make_setup(grass(4, 2))) == 6);
  CHECK(euler_characteristic(make_setup(orth(2, Field::C))) == 0);
  CHECK(euler_characteristic(make_setup(orth(3, Field::C))) == 0);
  CHECK(euler_characteristic(make_setup(flag_u(3))) == 6);
}

TEST_CASE("setup validation") {
  CHECK_THROWS_AS((void)make_setup(grass(4, 2), {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)make_setup(grass(4, 2), {2.0, 1.0, 3.0, 4.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)make_setup(grass(4, 2), {-1.0, 1.0, 2.0, 3.0}),
                  std::invalid_argument);
}
