#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmorse/manifold.hpp"

using namespace matmorse;

namespace {
std::vector<ManifoldDescriptor> desk_descriptors() {
  return {orth(3, Field::R), orth(2, Field::C), orth(2, Field::H), special_orth(3),
          grass(4, 2),       lagrangian(3),     cplx_str(2),       flag_u(3)};
}
}  // namespace

TEST_CASE("descriptor invariants") {
  CHECK(grass(4, 2).real_dimension() == 8);
  CHECK(lagrangian(3).real_dimension() == 6);
  CHECK(orth(3, Field::R).real_dimension() == 3);
  CHECK(orth(3, Field::C).real_dimension() == 9);
  CHECK(orth(2, Field::H).real_dimension() == 10);
  CHECK(cplx_str(3).real_dimension() == 6);
  CHECK(flag_u(3).real_dimension() == 6);
  CHECK(special_orth(5).nprime() == 4);
  CHECK(special_orth(6).nprime() == 6);
  CHECK_THROWS_AS(grass(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(grass(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(flag_u(3, {3.0, 2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("membership residual fixed examples") {
  const ManifoldDescriptor g42 = grass(4, 2);
  CHECK(membership_residual(sigma_point(g42, {1, 2})) == doctest::Approx(0.0));
  // identity has the wrong eigenvalue count l(x) = 0 != 2
  CHECK(membership_residual(g42, Matrix::identity(Field::C, 4)) > 1.0);

  const ManifoldDescriptor cs2 = cplx_str(2);
  CHECK(membership_residual(sigma_point(cs2, {})) == doctest::Approx(0.0));

  CHECK_THROWS_AS((void)membership_residual(g42, Matrix::identity(Field::C, 3)),
                  std::invalid_argument);
}

TEST_CASE("tangent projection at sigma_{1,2} in Grass(4,2)") {
  const ManifoldPoint p = sigma_point(grass(4, 2), {1, 2});
  // b_{1,3} anti-commutes with x, hence is tangent (0-based indices 0,2)
  const Matrix b13 = basis_b(Field::C, 4, 0, 2);
  CHECK(norm(tangent_project(p, b13) - b13) < 1e-12);
  CHECK(norm(normal_project(p, b13)) < 1e-12);
  // the identity commutes with x, hence is purely normal
  const Matrix id = Matrix::identity(Field::C, 4);
  CHECK(norm(tangent_project(p, id)) < 1e-12);
  CHECK(norm(normal_project(p, id) - id) < 1e-12);
}

TEST_CASE("projection identities on seeded points of every kind") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const ManifoldPoint p = random_point(d, seed);
      CHECK(membership_residual(p) < 1e-9);
      const Matrix u = random_tangent(p, seed * 31 + 7);
      Rng rng(mix_seed(seed, 0xabc));
      const Matrix w =
          structure_project(d, rng.gaussian_matrix(d.ambient_field(), d.ambient_size(),
                                                   d.ambient_size()));
      const Matrix t = tangent_project(p, w);
      const Matrix n = normal_project(p, w);
      CHECK(norm(t + n - w) < 1e-9);
      CHECK(norm(tangent_project(p, t) - t) < 1e-9);
      CHECK(norm(normal_project(p, n) - n) < 1e-9);
      CHECK(std::abs(inner(t, n)) < 1e-9);
      CHECK(tangent_equation_residual(p, t) < 1e-9);
      CHECK(tangent_equation_residual(p, u) < 1e-9);
      if (seed > 3) break;  // full hundred only for the lightest checks below
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const ManifoldPoint p = random_point(d, seed);
      const Matrix u = random_tangent(p, seed);
      CHECK(norm(tangent_project(p, u) - u) < 1e-9);
    }
  }
}

TEST_CASE("mutual orthogonality of tangent and normal images") {
  const ManifoldPoint p = random_point(grass(4, 2), 3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng r1(mix_seed(s, 1)), r2(mix_seed(s, 2));
    const Matrix u = structure_project(p.descriptor, r1.gaussian_matrix(Field::C, 4, 4));
    const Matrix v = structure_project(p.descriptor, r2.gaussian_matrix(Field::C, 4, 4));
    CHECK(std::abs(inner(tangent_project(p, u), normal_project(p, v))) < 1e-9);
  }
}

TEST_CASE("tangent frame cardinality equals the real dimension") {
  CHECK(tangent_frame(sigma_point(grass(4, 2), {1, 2})).size() == 8);
  CHECK(tangent_frame(sigma_point(lagrangian(3), {})).size() == 6);
  CHECK(tangent_frame(flag_point(flag_u(3), {1, 2, 3})).size() == 6);
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ManifoldPoint p = random_point(d, seed);
      const auto frame = tangent_frame(p);
      CHECK(static_cast<int>(frame.size()) == d.real_dimension());
      for (const auto& e : frame) CHECK(tangent_equation_residual(p, e) < 1e-9);
    }
  }
}

TEST_CASE("retraction fixed points and perturbations") {
  for (const auto& d : desk_descriptors()) {
    CAPTURE(d.name());
    const ManifoldPoint p = random_point(d, 5);
    const ManifoldPoint again = retract(d, p.x);
    CHECK(norm(again.x - p.x) < 1e-9);

    const Matrix u = random_tangent(p, 77);
    const Matrix pert = p.x + u.scaled(1e-3 / std::max(norm(u), 1e-300));
    const ManifoldPoint back = retract(d, pert);
    CHECK(membership_residual(back) < 1e-10);

    // idempotence on its own output
    CHECK(norm(retract(d, back.x).x - back.x) < 1e-12);
  }
}

TEST_CASE("Newton polar reaches quadratic accuracy from 1e-2 residual") {
  const ManifoldDescriptor d = orth(3, Field::R);
  const ManifoldPoint p = random_point(d, 9);
  Rng rng(42);
  Matrix noise = rng.gaussian_matrix(Field::R, 3, 3);
  noise = noise.scaled(1e-2 / norm(noise.transpose() * p.x + p.x.transpose() * noise));
  const Matrix y = p.x + noise;
  const ManifoldPoint z = retract(d, y);
  CHECK(norm(z.x.transpose() * z.x - Matrix::identity(Field::R, 3)) < 1e-12);
}

TEST_CASE("retraction rejects far-away input") {
  const ManifoldDescriptor d = orth(2, Field::R);
  CHECK_THROWS_AS((void)retract(d, Matrix::identity(Field::R, 2).scaled(3.0)),
                  std::runtime_error);
}

TEST_CASE("random points respect structure") {
  const ManifoldPoint o = random_point(orth(3, Field::R), 1);
  CHECK(std::abs(std::abs(det_real(o.x)) - 1.0) < 1e-9);

  const ManifoldPoint so = random_point(special_orth(4), 2);
  CHECK(det_real(so.x) == doctest::Approx(1.0).epsilon(1e-9));

  const ManifoldPoint g = random_point(grass(4, 2), 7);
  const EigHerm e = eigh_hermitian(g.x);
  int negatives = 0;
  for (double v : e.values) {
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-9);
    if (v < 0) ++negatives;
  }
  CHECK(negatives == 2);

  // determinism: equal seeds give bitwise-equal matrices
  const ManifoldPoint a = random_point(lagrangian(3), 11);
  const ManifoldPoint b = random_point(lagrangian(3), 11);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.x(i, j) == b.x(i, j));
}

TEST_CASE("projected ambient basis spans exactly the tangent space at a Grass point") {
  // 2k(n-k) survivors out of the n^2 ambient generators
  const ManifoldPoint p = random_point(grass(5, 2), 13);
  std::vector<Matrix> projected;
  for (const auto& e : ambient_basis(p.descriptor)) projected.push_back(tangent_project(p, e));
  CHECK(orthonormalize(projected).size() == 12);
}
