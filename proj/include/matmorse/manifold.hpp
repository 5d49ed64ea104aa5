#pragma once

// The homogeneous spaces as embedded submanifolds of matrix spaces:
//
//   OrthF(n;F)   x* x = I                       in M(n;F), F = R, C, H
//   SpecialOrth  OrthF(n;R) with det x = +1
//   Grass(n,k)   x Hermitian, x^2 = I, k negative eigenvalues
//   Lagrangian   x symmetric complex, conj(x) x = I
//   CplxStr(n)   x real skew 2n x 2n, x^2 = -I
//   FlagU(n)     x Hermitian with fixed simple spectrum (adjoint orbit)
//
// Tangent and normal spaces follow the anti-commutator / commutator
// characterizations; each kind has a projection pair
//   u = (u - x u^ x)/2 + (u + x u^ x)/2
// where u^ is u, u* or conj(u) depending on the defining equation.  For
// CplxStr the roles of the two summands swap because x^2 = -I.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matmorse/linalg.hpp"
#include "matmorse/matrix.hpp"
#include "matmorse/rng.hpp"

namespace matmorse {

inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kRetractBasin = 0.5;
inline constexpr double kRetractTarget = 1e-10;

enum class ManifoldKind { OrthF, SpecialOrth, Grass, Lagrangian, CplxStr, FlagU };

struct ManifoldDescriptor {
  ManifoldKind kind;
  int n = 0;
  int k = 0;                     // Grass only
  Field field = Field::R;       // OrthF only
  std::vector<double> spectrum;  // FlagU only, strictly increasing

  Field ambient_field() const {
    switch (kind) {
      case ManifoldKind::OrthF: return field;
      case ManifoldKind::SpecialOrth: return Field::R;
      case ManifoldKind::Grass: return Field::C;
      case ManifoldKind::Lagrangian: return Field::C;
      case ManifoldKind::CplxStr: return Field::R;
      case ManifoldKind::FlagU: return Field::C;
    }
    return Field::R;
  }

  int ambient_size() const { return kind == ManifoldKind::CplxStr ? 2 * n : n; }

  int real_dimension() const {
    const int df = real_dim(ambient_field());
    switch (kind) {
      case ManifoldKind::OrthF: return df * n * (n - 1) / 2 + (df - 1) * n;
      case ManifoldKind::SpecialOrth: return n * (n - 1) / 2;
      case ManifoldKind::Grass: return 2 * k * (n - k);
      case ManifoldKind::Lagrangian: return n * (n + 1) / 2;
      case ManifoldKind::CplxStr: return n * (n - 1);
      case ManifoldKind::FlagU: return n * (n - 1);
    }
    return 0;
  }

  // n' = 2[n/2], the reflection count used by the SO(n) resolution
  int nprime() const { return 2 * (n / 2); }

  std::string name() const {
    std::ostringstream os;
    switch (kind) {
      case ManifoldKind::OrthF:
        if (field == Field::R) os << "O(" << n << ";R)";
        else if (field == Field::C) os << "U(" << n << ")";
        else os << "Sp(" << n << ")";
        break;
      case ManifoldKind::SpecialOrth: os << "SO(" << n << ")"; break;
      case ManifoldKind::Grass: os << "G(" << n << "," << k << ")"; break;
      case ManifoldKind::Lagrangian: os << "LG(" << n << ")"; break;
      case ManifoldKind::CplxStr: os << "CS(" << n << ")"; break;
      case ManifoldKind::FlagU: os << "FlagU(" << n << ")"; break;
    }
    return os.str();
  }

  bool operator==(const ManifoldDescriptor& o) const {
    return kind == o.kind && n == o.n && k == o.k && field == o.field &&
           spectrum == o.spectrum;
  }
};

inline ManifoldDescriptor orth(int n, Field f) {
  if (n < 1) throw std::invalid_argument("orth: n must be positive");
  return {ManifoldKind::OrthF, n, 0, f, {}};
}
inline ManifoldDescriptor special_orth(int n) {
  if (n < 1) throw std::invalid_argument("special_orth: n must be positive");
  return {ManifoldKind::SpecialOrth, n, 0, Field::R, {}};
}
inline ManifoldDescriptor grass(int n, int k) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("grass: need 1 <= k <= n-1");
  return {ManifoldKind::Grass, n, k, Field::C, {}};
}
inline ManifoldDescriptor lagrangian(int n) {
  if (n < 1) throw std::invalid_argument("lagrangian: n must be positive");
  return {ManifoldKind::Lagrangian, n, 0, Field::C, {}};
}
inline ManifoldDescriptor cplx_str(int n) {
  if (n < 1) throw std::invalid_argument("cplx_str: n must be positive");
  return {ManifoldKind::CplxStr, n, 0, Field::R, {}};
}
inline ManifoldDescriptor flag_u(int n, std::vector<double> spectrum = {}) {
  if (n < 1) throw std::invalid_argument("flag_u: n must be positive");
  if (spectrum.empty())
    for (int i = 1; i <= n; ++i) spectrum.push_back(static_cast<double>(i));
  if (static_cast<int>(spectrum.size()) != n)
    throw std::invalid_argument("flag_u: spectrum size must equal n");
  for (std::size_t i = 1; i < spectrum.size(); ++i)
    if (!(spectrum[i - 1] < spectrum[i]))
      throw std::invalid_argument("flag_u: spectrum must be strictly increasing");
  return {ManifoldKind::FlagU, n, 0, Field::C, std::move(spectrum)};
}

struct ManifoldPoint {
  ManifoldDescriptor descriptor;
  Matrix x;
};

// --- elementary pattern matrices used throughout ------------------------

// symmetric: 1 at (s,t) and (t,s) (a single 1 when s == t); 0-based indices
inline Matrix basis_b(Field f, int n, int s, int t) {
  Matrix m(f, n, n);
  m(s, t) = Scalar(1.0);
  m(t, s) = Scalar(1.0);
  return m;
}
// Hermitian: i at (s,t), -i at (t,s)
inline Matrix basis_c(int n, int s, int t) {
  Matrix m(Field::C, n, n);
  m(s, t) = kI;
  m(t, s) = -kI;
  return m;
}
// skew: 1 at (s,t), -1 at (t,s)
inline Matrix basis_beta(Field f, int n, int s, int t) {
  Matrix m(f, n, n);
  m(s, t) = Scalar(1.0);
  m(t, s) = Scalar(-1.0);
  return m;
}
// symmetric complex: i at (s,t) and (t,s)
inline Matrix basis_ib(int n, int s, int t) {
  Matrix m(Field::C, n, n);
  m(s, t) = kI;
  m(t, s) = kI;
  return m;
}

inline Matrix j_block_diagonal(int n, const std::vector<double>& coeff) {
  Matrix m(Field::R, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m(2 * i, 2 * i + 1) = Scalar(-coeff[i]);
    m(2 * i + 1, 2 * i) = Scalar(coeff[i]);
  }
  return m;
}

// sigma_I: diagonal of +/-1 (eps = -1 on I), or signed J blocks for CplxStr
inline ManifoldPoint sigma_point(const ManifoldDescriptor& d, const std::vector<int>& I) {
  for (int i : I)
    if (i < 1 || i > d.n) throw std::invalid_argument("sigma_point: label entry out of range");
  std::vector<double> eps(d.n, 1.0);
  for (int i : I) eps[i - 1] = -1.0;
  if (d.kind == ManifoldKind::CplxStr) return {d, j_block_diagonal(d.n, eps)};
  if (d.kind == ManifoldKind::FlagU)
    throw std::invalid_argument("sigma_point: FlagU points are labeled by permutations");
  Matrix m(d.ambient_field(), d.n, d.n);
  for (int i = 0; i < d.n; ++i) m(i, i) = Scalar(eps[i]);
  return {d, m};
}

// FlagU critical point for a permutation: diag entries spectrum[perm[i]-1]
inline ManifoldPoint flag_point(const ManifoldDescriptor& d, const std::vector<int>& perm) {
  if (d.kind != ManifoldKind::FlagU) throw std::invalid_argument("flag_point: FlagU only");
  if (static_cast<int>(perm.size()) != d.n)
    throw std::invalid_argument("flag_point: permutation size mismatch");
  Matrix m(Field::C, d.n, d.n);
  for (int i = 0; i < d.n; ++i) m(i, i) = Scalar(d.spectrum[perm[i] - 1]);
  return {d, m};
}

// --- ambient structure ----------------------------------------------------

// project an arbitrary matrix into the ambient subspace E of the kind
inline Matrix structure_project(const ManifoldDescriptor& d, const Matrix& u) {
  switch (d.kind) {
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth:
      return u;
    case ManifoldKind::Grass:
    case ManifoldKind::FlagU:
      return (u + u.adjoint()).scaled(0.5);
    case ManifoldKind::Lagrangian:
      return (u + u.transpose()).scaled(0.5);
    case ManifoldKind::CplxStr:
      return (u - u.transpose()).scaled(0.5);
  }
  return u;
}

// real basis of the ambient space E
inline std::vector<Matrix> ambient_basis(const ManifoldDescriptor& d) {
  std::vector<Matrix> out;
  const int m = d.ambient_size();
  switch (d.kind) {
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth: {
      const Scalar units[4] = {kOne, kI, kJ, kK};
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          for (int u = 0; u < real_dim(d.ambient_field()); ++u) {
            Matrix e(d.ambient_field(), m, m);
            e(r, c) = units[u];
            out.push_back(e);
          }
      break;
    }
    case ManifoldKind::Grass:
    case ManifoldKind::FlagU:
      for (int s = 0; s < m; ++s) out.push_back(basis_b(Field::C, m, s, s));
      for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t) {
          out.push_back(basis_b(Field::C, m, s, t));
          out.push_back(basis_c(m, s, t));
        }
      break;
    case ManifoldKind::Lagrangian:
      for (int s = 0; s < m; ++s)
        for (int t = s; t < m; ++t) {
          out.push_back(basis_b(Field::C, m, s, t));
          out.push_back(basis_ib(m, s, t));
        }
      break;
    case ManifoldKind::CplxStr:
      for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t) out.push_back(basis_beta(Field::R, m, s, t));
      break;
  }
  return out;
}

// --- membership ------------------------------------------------------------

inline void require_shape(const ManifoldDescriptor& d, const Matrix& x) {
  if (x.field() != d.ambient_field() || x.rows() != d.ambient_size() ||
      x.cols() != d.ambient_size())
    throw std::invalid_argument("matrix shape/field does not match descriptor");
}

inline double membership_residual(const ManifoldDescriptor& d, const Matrix& x) {
  require_shape(d, x);
  const int m = d.ambient_size();
  const Matrix id = Matrix::identity(d.ambient_field(), m);
  switch (d.kind) {
    case ManifoldKind::OrthF:
      return norm(x.adjoint() * x - id);
    case ManifoldKind::SpecialOrth:
      return norm(x.transpose() * x - id) + std::abs(det_real(x) - 1.0);
    case ManifoldKind::Grass:
      // trace pins the eigenvalue count: tr x = n - 2k on involutions
      return norm(x - x.adjoint()) + norm(x * x - id) +
             std::abs(x.trace_re() - static_cast<double>(d.n - 2 * d.k));
    case ManifoldKind::Lagrangian:
      return norm(x - x.transpose()) + norm(x.conj() * x - id);
    case ManifoldKind::CplxStr:
      return norm(x + x.transpose()) + norm(x * x + id);
    case ManifoldKind::FlagU: {
      double r = norm(x - x.adjoint());
      const EigHerm eh = eigh_hermitian(x);
      double s = 0.0;
      for (int i = 0; i < d.n; ++i) {
        const double diff = eh.values[i] - d.spectrum[d.n - 1 - i];  // both descending
        s += diff * diff;
      }
      return r + std::sqrt(s);
    }
  }
  return 0.0;
}

inline double membership_residual(const ManifoldPoint& p) {
  return membership_residual(p.descriptor, p.x);
}

inline void require_member(const ManifoldPoint& p, double tol = kMembershipTol) {
  if (membership_residual(p) > tol)
    throw std::invalid_argument("point is not on the manifold within tolerance");
}

// --- tangent / normal projections ------------------------------------------

namespace detail {
// the matrix x u^ x entering the canonical decompositions
inline Matrix sandwich(const ManifoldDescriptor& d, const Matrix& x, const Matrix& u) {
  switch (d.kind) {
    case ManifoldKind::Grass:
    case ManifoldKind::CplxStr:
      return x * u * x;
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth:
      return x * u.adjoint() * x;
    case ManifoldKind::Lagrangian:
      return x * u.conj() * x;
    case ManifoldKind::FlagU:
      throw std::logic_error("sandwich: FlagU handled spectrally");
  }
  return u;
}

struct FlagSplit {
  Matrix tangent;
  Matrix normal;
};

// FlagU splits in the eigenbasis of x: the commutant (diagonal part) is
// normal, the off-diagonal Hermitian part is tangent.
inline FlagSplit flag_split(const ManifoldDescriptor& d, const Matrix& x, const Matrix& u) {
  const EigHerm eh = eigh_hermitian(x);
  const int n = d.n;
  Matrix v(Field::C, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v(i, j) = eh.vectors[j](i, 0);
  const Matrix w = v.adjoint() * u * v;
  Matrix diag(Field::C, n, n);
  for (int i = 0; i < n; ++i) diag(i, i) = Scalar(w(i, i).re());
  const Matrix normal = v * diag * v.adjoint();
  return {structure_project(d, u - normal), structure_project(d, normal)};
}
}  // namespace detail

inline Matrix tangent_project(const ManifoldPoint& p, const Matrix& u0,
                              double tol = kMembershipTol) {
  require_member(p, tol);
  const Matrix u = structure_project(p.descriptor, u0);
  if (p.descriptor.kind == ManifoldKind::FlagU)
    return detail::flag_split(p.descriptor, p.x, u).tangent;
  const Matrix s = detail::sandwich(p.descriptor, p.x, u);
  if (p.descriptor.kind == ManifoldKind::CplxStr) return (u + s).scaled(0.5);
  return (u - s).scaled(0.5);
}

inline Matrix normal_project(const ManifoldPoint& p, const Matrix& u0,
                             double tol = kMembershipTol) {
  require_member(p, tol);
  const Matrix u = structure_project(p.descriptor, u0);
  if (p.descriptor.kind == ManifoldKind::FlagU)
    return detail::flag_split(p.descriptor, p.x, u).normal;
  const Matrix s = detail::sandwich(p.descriptor, p.x, u);
  if (p.descriptor.kind == ManifoldKind::CplxStr) return (u - s).scaled(0.5);
  return (u + s).scaled(0.5);
}

// residual of the tangent-space equation of the kind (x u = -u x and its
// variants); for FlagU, where no such equation applies, the norm of the
// normal component is returned instead.
inline double tangent_equation_residual(const ManifoldPoint& p, const Matrix& u) {
  const ManifoldDescriptor& d = p.descriptor;
  switch (d.kind) {
    case ManifoldKind::Grass:
    case ManifoldKind::CplxStr:
      return norm(p.x * u + u * p.x);
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth:
      return norm(p.x.adjoint() * u + u.adjoint() * p.x);
    case ManifoldKind::Lagrangian:
      return norm(p.x.conj() * u + u.conj() * p.x);
    case ManifoldKind::FlagU:
      return norm(normal_project(p, u));
  }
  return 0.0;
}

// orthonormal basis of T_p M, by projecting the ambient basis
inline std::vector<Matrix> tangent_frame(const ManifoldPoint& p) {
  std::vector<Matrix> projected;
  for (const auto& e : ambient_basis(p.descriptor))
    projected.push_back(tangent_project(p, e));
  std::vector<Matrix> frame = orthonormalize(projected);
  if (static_cast<int>(frame.size()) != p.descriptor.real_dimension())
    throw std::runtime_error("tangent_frame: frame deficiency at " + p.descriptor.name());
  return frame;
}

// --- retraction -------------------------------------------------------------

inline ManifoldPoint retract(const ManifoldDescriptor& d, const Matrix& y,
                             double basin = kRetractBasin) {
  require_shape(d, y);
  const int m = d.ambient_size();
  const Matrix id = Matrix::identity(d.ambient_field(), m);

  auto check_basin = [&](double residual) {
    if (!(residual <= basin))
      throw std::runtime_error("retract: basin escape (residual " +
                               std::to_string(residual) + ")");
  };

  Matrix x = structure_project(d, y);
  switch (d.kind) {
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth: {
      check_basin(norm(x.adjoint() * x - id));
      for (int it = 0; it < 64; ++it) {
        const double r = norm(x.adjoint() * x - id);
        if (r < 1e-14) break;
        x = (x + inverse(x.adjoint())).scaled(0.5);
      }
      if (d.kind == ManifoldKind::SpecialOrth && det_real(x) < 0.0)
        throw std::runtime_error("retract: wrong component of O(n)");
      break;
    }
    case ManifoldKind::Lagrangian: {
      check_basin(norm(x.conj() * x - id));
      for (int it = 0; it < 64; ++it) {
        const double r = norm(x.conj() * x - id);
        if (r < 1e-14) break;
        x = x * (id.scaled(3.0) - x.conj() * x).scaled(0.5);
      }
      break;
    }
    case ManifoldKind::CplxStr: {
      check_basin(norm(x * x + id));
      for (int it = 0; it < 64; ++it) {
        const double r = norm(x * x + id);
        if (r < 1e-14) break;
        // Newton normalization with x* x = -x^2
        x = x * (id.scaled(3.0) + x * x).scaled(0.5);
      }
      break;
    }
    case ManifoldKind::Grass: {
      check_basin(membership_residual(d, structure_project(d, y)));
      const EigHerm eh = eigh_hermitian(x);
      // eigenvalues descending: the k most negative are the last k
      std::vector<Matrix> neg(eh.vectors.end() - d.k, eh.vectors.end());
      complex_mgs(neg);
      Matrix proj(Field::C, m, m);
      for (const auto& v : neg) proj = proj + v * v.adjoint();
      x = id - proj.scaled(2.0);
      break;
    }
    case ManifoldKind::FlagU: {
      const EigHerm eh = eigh_hermitian(x);
      std::vector<Matrix> vs = eh.vectors;
      complex_mgs(vs);
      Matrix out(Field::C, m, m);
      for (int j = 0; j < m; ++j)
        out = out + (vs[j] * vs[j].adjoint()).scaled(d.spectrum[d.n - 1 - j]);
      x = out;
      break;
    }
  }

  ManifoldPoint p{d, x};
  if (membership_residual(p) > kRetractTarget)
    throw std::runtime_error("retract: did not reach the manifold at " + d.name());
  return p;
}

// --- sampling ----------------------------------------------------------------

namespace detail {
// Gram-Schmidt on columns over the coefficient field (right scalar
// coefficients, valid over H)
inline Matrix orthonormal_columns(Rng& rng, Field f, int n, int k) {
  Matrix v(f, n, k);
  for (int j = 0; j < k; ++j) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64) throw std::runtime_error("orthonormal_columns: sampler exhaustion");
      Matrix col(f, n, 1);
      for (int i = 0; i < n; ++i) col(i, 0) = rng.gaussian_scalar(f);
      for (int pass = 0; pass < 2; ++pass)
        for (int q = 0; q < j; ++q) {
          Scalar coef;
          for (int i = 0; i < n; ++i) coef += v(i, q).conj() * col(i, 0);
          for (int i = 0; i < n; ++i) col(i, 0) -= v(i, q) * coef;
        }
      const double nv = norm(col);
      if (nv > 1e-6) {
        for (int i = 0; i < n; ++i) v(i, j) = col(i, 0).scaled(1.0 / nv);
        break;
      }
    }
  }
  return v;
}
}  // namespace detail

inline ManifoldPoint random_point(const ManifoldDescriptor& d, std::uint64_t seed) {
  const int m = d.ambient_size();
  switch (d.kind) {
    case ManifoldKind::OrthF: {
      Rng rng(mix_seed(seed, 0x01));
      return {d, detail::orthonormal_columns(rng, d.field, m, m)};
    }
    case ManifoldKind::SpecialOrth: {
      for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        Rng rng(mix_seed(seed, 0x5000 + attempt));
        Matrix x = detail::orthonormal_columns(rng, Field::R, m, m);
        if (det_real(x) > 0.0) return {d, x};
      }
      throw std::runtime_error("random_point: SO component sampling failed");
    }
    case ManifoldKind::Grass: {
      Rng rng(mix_seed(seed, 0x02));
      const Matrix v = detail::orthonormal_columns(rng, Field::C, m, d.k);
      const Matrix proj = v * v.adjoint();
      return {d, Matrix::identity(Field::C, m) - proj.scaled(2.0)};
    }
    case ManifoldKind::Lagrangian: {
      Rng rng(mix_seed(seed, 0x03));
      const Matrix u = detail::orthonormal_columns(rng, Field::C, m, m);
      return {d, u * u.transpose()};
    }
    case ManifoldKind::CplxStr: {
      Rng rng(mix_seed(seed, 0x04));
      const Matrix q = detail::orthonormal_columns(rng, Field::R, m, m);
      const Matrix j = j_block_diagonal(d.n, std::vector<double>(d.n, 1.0));
      return {d, q * j * q.transpose()};
    }
    case ManifoldKind::FlagU: {
      Rng rng(mix_seed(seed, 0x05));
      const Matrix u = detail::orthonormal_columns(rng, Field::C, m, m);
      Matrix diag(Field::C, m, m);
      for (int i = 0; i < m; ++i) diag(i, i) = Scalar(d.spectrum[i]);
      return {d, u * diag * u.adjoint()};
    }
  }
  throw std::logic_error("random_point: unknown kind");
}

// seeded Gaussian in the ambient space followed by tangent projection
inline Matrix random_tangent(const ManifoldPoint& p, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x7a));
  const int m = p.descriptor.ambient_size();
  const Matrix g = rng.gaussian_matrix(p.descriptor.ambient_field(), m, m);
  return tangent_project(p, structure_project(p.descriptor, g));
}

}  // namespace matmorse
