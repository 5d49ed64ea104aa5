#pragma once

// Resolutions of the homogeneous spaces by products of projective spaces
// and oriented-plane Grassmannians, and the cycles obtained by restricting
// them to nested coordinate spans:
//
//   SO(n):   h(l_1,...,l_{n'}) = prod R(l_i), R(l) the reflection in l-perp
//   G(n,k):  k mutually orthogonal complex lines -> involution I - 2P_span
//   CS(n):   n orthogonal oriented planes -> product of quarter rotations
//
// The cycle through sigma_I samples line s inside span(e_1..e_{i_s}); its
// dimension then equals the Morse index of sigma_I, which is the
// calibration that fixes the superscript convention.  The sampled maximum
// of f_a over a cycle never exceeds f_a(sigma_I): that is the
// Bott-Samelson maximum property these samplers are built to test.

#include "matmorse/morse.hpp"

namespace matmorse {

inline constexpr double kLineUnitTol = 1e-12;
inline constexpr double kPlaneOrthoTol = 1e-9;

struct Line {
  Matrix v;  // unit column vector over R or C, defined up to unit scalar
};

inline Line make_line(const Matrix& col) {
  if (col.cols() != 1) throw std::invalid_argument("make_line: column vector expected");
  const double n = norm(col);
  if (n < 1e-12) throw std::invalid_argument("make_line: zero vector");
  return {col.scaled(1.0 / n)};
}

inline Line coordinate_line(Field f, int n, int j) {
  Matrix col(f, n, 1);
  col(j, 0) = Scalar(1.0);
  return {col};
}

struct OrientedPlane {
  Matrix u, v;  // ordered orthonormal pair in R^{2n}
};

inline OrientedPlane make_plane(const Matrix& u, const Matrix& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.field() != Field::R || v.field() != Field::R)
    throw std::invalid_argument("make_plane: real column vectors expected");
  if (std::abs(norm(u) - 1.0) > kLineUnitTol || std::abs(norm(v) - 1.0) > kLineUnitTol ||
      std::abs(inner(u, v)) > kLineUnitTol)
    throw std::invalid_argument("make_plane: frame is not orthonormal");
  return {u, v};
}

// reflection in the hyperplane orthogonal to l: R(l) = I - 2 l l^t;
// orthogonal, det = -1, fixes l-perp pointwise, independent of the sign of l
inline Matrix reflection(const Line& l) {
  if (l.v.field() != Field::R)
    throw std::invalid_argument("reflection: real lines only");
  const int n = l.v.rows();
  return Matrix::identity(Field::R, n) - (l.v * l.v.transpose()).scaled(2.0);
}

// product of n' reflections; even count, so the result lands in SO(n)
inline ManifoldPoint resolve_so(const ManifoldDescriptor& d, const std::vector<Line>& lines) {
  if (d.kind != ManifoldKind::SpecialOrth)
    throw std::invalid_argument("resolve_so: SpecialOrth descriptor expected");
  if (static_cast<int>(lines.size()) != d.nprime())
    throw std::invalid_argument("resolve_so: expected n' = 2[n/2] lines");
  Matrix x = Matrix::identity(Field::R, d.n);
  for (const auto& l : lines) {
    if (l.v.rows() != d.n) throw std::invalid_argument("resolve_so: line dimension mismatch");
    x = x * reflection(l);
  }
  return {d, x};
}

// involution with -1 exactly on the span of the (mutually orthogonal) lines
inline Matrix grass_involution(int n, const std::vector<Line>& lines,
                               double ortho_tol = kPlaneOrthoTol) {
  Matrix proj(Field::C, n, n);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Matrix& li = lines[i].v;
    if (li.field() != Field::C || li.rows() != n)
      throw std::invalid_argument("grass_involution: complex lines in C^n expected");
    for (std::size_t j = 0; j < i; ++j)
      if ((lines[j].v.adjoint() * li).max_abs() > ortho_tol)
        throw std::invalid_argument("grass_involution: lines are not orthogonal");
    proj = proj + li * li.adjoint();
  }
  return Matrix::identity(Field::C, n) - proj.scaled(2.0);
}

inline ManifoldPoint resolve_grass(const ManifoldDescriptor& d,
                                   const std::vector<Line>& lines) {
  if (d.kind != ManifoldKind::Grass)
    throw std::invalid_argument("resolve_grass: Grass descriptor expected");
  if (static_cast<int>(lines.size()) != d.k)
    throw std::invalid_argument("resolve_grass: expected k lines");
  return {d, grass_involution(d.n, lines)};
}

// quarter rotation on the oriented plane (u,v), identity on its complement:
// u -> v -> -u, tau = I - uu^t - vv^t + vu^t - uv^t
inline Matrix plane_rotation(const OrientedPlane& p) {
  const int n = p.u.rows();
  return Matrix::identity(Field::R, n) - p.u * p.u.transpose() - p.v * p.v.transpose() +
         p.v * p.u.transpose() - p.u * p.v.transpose();
}

inline ManifoldPoint resolve_cs(const ManifoldDescriptor& d,
                                const std::vector<OrientedPlane>& planes,
                                double ortho_tol = kPlaneOrthoTol) {
  if (d.kind != ManifoldKind::CplxStr)
    throw std::invalid_argument("resolve_cs: CplxStr descriptor expected");
  if (static_cast<int>(planes.size()) != d.n)
    throw std::invalid_argument("resolve_cs: expected n orthogonal planes");
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(inner(planes[i].u, planes[j].u)) > ortho_tol ||
          std::abs(inner(planes[i].u, planes[j].v)) > ortho_tol ||
          std::abs(inner(planes[i].v, planes[j].u)) > ortho_tol ||
          std::abs(inner(planes[i].v, planes[j].v)) > ortho_tol)
        throw std::invalid_argument("resolve_cs: planes are not orthogonal");
    }
  Matrix x = Matrix::identity(Field::R, 2 * d.n);
  for (const auto& p : planes) {
    if (p.u.rows() != 2 * d.n) throw std::invalid_argument("resolve_cs: plane dimension mismatch");
    x = x * plane_rotation(p);
  }
  return {d, x};
}

namespace detail {
// Gaussian line in span(e_1..e_span), orthogonal to the given lines;
// bounded retries with derived sub-seeds on near-degenerate draws
inline Line sample_line_in_span(Rng& rng, Field f, int n, int span,
                                const std::vector<Line>& against) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix col(f, n, 1);
    for (int i = 0; i < span; ++i) col(i, 0) = rng.gaussian_scalar(f);
    for (const auto& l : against) {
      Scalar coef;
      for (int i = 0; i < n; ++i) coef += l.v(i, 0).conj() * col(i, 0);
      for (int i = 0; i < n; ++i) col(i, 0) -= l.v(i, 0) * coef;
    }
    if (norm(col) > 1e-6) return make_line(col);
  }
  throw std::runtime_error("sample_line_in_span: sampler exhaustion");
}
}  // namespace detail

// one random point of the cycle through sigma_I
inline ManifoldPoint sample_bs_cycle(const MorseSetup& s, const std::vector<int>& I,
                                     std::uint64_t seed) {
  const ManifoldDescriptor& d = s.descriptor;
  validate_subset_label(d, I);
  Rng rng(mix_seed(seed, 0xb5));
  const int r = static_cast<int>(I.size());

  if (d.kind == ManifoldKind::SpecialOrth) {
    std::vector<Line> lines;
    for (int i = 0; i < d.nprime() - r; ++i)
      lines.push_back(coordinate_line(Field::R, d.n, 0));  // fixed RP^0 factors
    for (int sidx = 0; sidx < r; ++sidx)
      lines.push_back(detail::sample_line_in_span(rng, Field::R, d.n, I[sidx], {}));
    return resolve_so(d, lines);
  }
  if (d.kind == ManifoldKind::Grass) {
    std::vector<Line> lines;
    for (int sidx = 0; sidx < r; ++sidx)
      lines.push_back(detail::sample_line_in_span(rng, Field::C, d.n, I[sidx], lines));
    return resolve_grass(d, lines);
  }
  throw std::invalid_argument("sample_bs_cycle: cycles are built for SO(n) and G(n,k)");
}

struct BsMaxReport {
  double max_f = 0.0;        // largest sampled f over the cycle
  double f_sigma = 0.0;      // f_a(sigma_I), the claimed absolute maximum
  double near_max_fraction = 0.0;  // samples within 1e-6 of f_sigma
  int samples = 0;
};

// sampled test of the maximum property: no point of the cycle may exceed
// f_a(sigma_I); a violation beyond 1e-9 throws
inline BsMaxReport bs_max_check(const MorseSetup& s, const std::vector<int>& I,
                                int samples, std::uint64_t seed) {
  BsMaxReport rep;
  rep.samples = samples;
  rep.f_sigma = f_value(s, s.descriptor.kind == ManifoldKind::FlagU
                               ? flag_point(s.descriptor, I)
                               : sigma_point(s.descriptor, I));
  rep.max_f = -1e300;
  int near = 0;
  for (int i = 0; i < samples; ++i) {
    const ManifoldPoint p = sample_bs_cycle(s, I, mix_seed(seed, 0x6000 + i));
    const double f = f_value(s, p);
    rep.max_f = std::max(rep.max_f, f);
    if (f >= rep.f_sigma - 1e-6) ++near;
    if (f > rep.f_sigma + 1e-9)
      throw std::runtime_error("bs_max_check: sampled value exceeds f(sigma_I) at " +
                               label_string(s.descriptor, I));
  }
  rep.near_max_fraction = samples > 0 ? static_cast<double>(near) / samples : 0.0;
  return rep;
}

}  // namespace matmorse
