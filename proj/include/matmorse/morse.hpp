#pragma once

// The distance-squared Morse function f_a(x) = |x - a|^2 on each embedded
// homogeneous space, with
//
//   a = diag(l_1,...,l_n),  0 < l_1 < ... < l_n   (l_i J blocks for CplxStr),
//
// its closed-form gradient and Hessian, the critical set sigma_I, the
// closed-form indices, numerically certified indices via tangent-frame Gram
// matrices, and the resulting Betti data of the perfect Morse counting.
//
// Closed forms used here (derived from the tangent projections; at the
// diagonal critical points they reproduce the eigenvalue tables of the
// Hessian case analysis exactly):
//
//   gradient:  x a x - a            Grass, OrthF, Lagrangian
//              -(x a x + a)         CplxStr            (x^2 = -I flips signs)
//   Hessian:   (u a - a u) x0       Grass
//              (a u - u a) x0       CplxStr
//              (u a - a u*) x0      OrthF
//              (u a - a conj(u)) x0 Lagrangian
//
// FlagU has no closed Hessian; it is differenced from the projected
// gradient.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "matmorse/manifold.hpp"

namespace matmorse {

inline constexpr double kCriticalGradTol = 1e-10;
inline constexpr double kDegeneracyTau = 1e-6;   // relative to spectral radius
inline constexpr double kHessianFdStep = 1e-6;

struct MorseSetup {
  ManifoldDescriptor descriptor;
  std::vector<double> lambda;  // strictly increasing positive
  Matrix a;                    // focal point
};

inline MorseSetup make_setup(const ManifoldDescriptor& d,
                             std::vector<double> lambda = {}) {
  if (d.kind == ManifoldKind::FlagU) {
    if (!lambda.empty() && lambda != d.spectrum)
      throw std::invalid_argument("make_setup: FlagU lambda must equal the spectrum");
    lambda = d.spectrum;
  }
  if (lambda.empty())
    for (int i = 1; i <= d.n; ++i) lambda.push_back(static_cast<double>(i));
  if (static_cast<int>(lambda.size()) != d.n)
    throw std::invalid_argument("make_setup: lambda size must equal n");
  if (lambda.front() <= 0.0)
    throw std::invalid_argument("make_setup: lambda must be positive");
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (!(lambda[i - 1] < lambda[i]))
      throw std::invalid_argument("make_setup: lambda must be strictly increasing");

  Matrix a;
  if (d.kind == ManifoldKind::CplxStr) {
    a = j_block_diagonal(d.n, lambda);
  } else {
    a = Matrix(d.ambient_field(), d.n, d.n);
    for (int i = 0; i < d.n; ++i) a(i, i) = Scalar(lambda[i]);
  }
  return {d, std::move(lambda), std::move(a)};
}

struct CriticalPoint {
  std::vector<int> label;  // sorted subset (1-based), or permutation for FlagU
  ManifoldPoint point;
  int index = 0;  // closed-form Morse index
  double f = 0.0;
};

inline std::string label_string(const ManifoldDescriptor& d, const std::vector<int>& label) {
  std::ostringstream os;
  if (d.kind == ManifoldKind::FlagU) {
    os << "w=(";
    for (std::size_t i = 0; i < label.size(); ++i) os << (i ? "," : "") << label[i];
    os << ")";
  } else {
    os << "{";
    for (std::size_t i = 0; i < label.size(); ++i) os << (i ? "," : "") << label[i];
    os << "}";
  }
  return os.str();
}

// --- f and its derivatives ---------------------------------------------------

// <a,x> evaluated through the diagonal (or J-block) structure of a
inline double focal_pairing(const MorseSetup& s, const Matrix& x) {
  double t = 0.0;
  if (s.descriptor.kind == ManifoldKind::CplxStr) {
    for (int i = 0; i < s.descriptor.n; ++i)
      t += s.lambda[i] * (-2.0 * x(2 * i, 2 * i + 1).re());
  } else {
    for (int i = 0; i < s.descriptor.n; ++i) t += s.lambda[i] * x(i, i).re();
  }
  return t;
}

// f_a = |x-a|^2; cross-checked against the expansion
// <x,x> + <a,a> - 2<a,x> with <a,x> taken from the diagonal entries
inline double f_value(const MorseSetup& s, const ManifoldPoint& p,
                      double member_tol = kMembershipTol) {
  require_member(p, member_tol);
  const double direct = inner(p.x - s.a, p.x - s.a);
  const double expanded = inner(p.x, p.x) + inner(s.a, s.a) - 2.0 * focal_pairing(s, p.x);
  if (std::abs(direct - expanded) > 1e-9 * std::max(1.0, std::abs(direct)))
    throw std::runtime_error("f_value: expansion disagrees with the direct norm");
  return direct;
}

// ambient extension of grad f_a; defined near the manifold, no membership
// check so that integrator stages may evaluate it
inline Matrix gradient_field(const MorseSetup& s, const Matrix& x) {
  const ManifoldDescriptor& d = s.descriptor;
  switch (d.kind) {
    case ManifoldKind::Grass:
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth:
    case ManifoldKind::Lagrangian:
      return x * s.a * x - s.a;
    case ManifoldKind::CplxStr:
      return (x * s.a * x + s.a).scaled(-1.0);
    case ManifoldKind::FlagU: {
      const Matrix h = structure_project(d, x);
      return detail::flag_split(d, h, (h - s.a).scaled(2.0)).tangent;
    }
  }
  throw std::logic_error("gradient_field: unknown kind");
}

inline Matrix gradient_closed(const MorseSetup& s, const ManifoldPoint& p,
                              double member_tol = kMembershipTol) {
  require_member(p, member_tol);
  return gradient_field(s, p.x);
}

// --- critical set --------------------------------------------------------------

inline void validate_subset_label(const ManifoldDescriptor& d, const std::vector<int>& I) {
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (I[i] < 1 || I[i] > d.n) throw std::invalid_argument("label entry out of range");
    if (i > 0 && I[i] <= I[i - 1])
      throw std::invalid_argument("label must be strictly increasing");
  }
  if (d.kind == ManifoldKind::Grass && static_cast<int>(I.size()) != d.k)
    throw std::invalid_argument("Grassmannian labels have size k");
  if (d.kind == ManifoldKind::SpecialOrth && I.size() % 2 != 0)
    throw std::invalid_argument("SO(n) labels have even size");
}

inline int index_closed(const MorseSetup& s, const std::vector<int>& label) {
  const ManifoldDescriptor& d = s.descriptor;
  if (d.kind == ManifoldKind::FlagU) {
    // twice the number of singular planes x_i = x_j crossed by the segment
    // [a, w(a)]; a crossing is a sign flip of the coordinate difference
    if (static_cast<int>(label.size()) != d.n)
      throw std::invalid_argument("FlagU labels are permutations of 1..n");
    std::vector<bool> seen(d.n, false);
    for (int v : label) {
      if (v < 1 || v > d.n || seen[v - 1])
        throw std::invalid_argument("FlagU labels are permutations of 1..n");
      seen[v - 1] = true;
    }
    int crossings = 0;
    for (int i = 0; i < d.n; ++i)
      for (int j = i + 1; j < d.n; ++j)
        if (label[i] > label[j]) ++crossings;  // lambda increasing: flip iff inversion
    return 2 * crossings;
  }
  validate_subset_label(d, label);
  const int r = static_cast<int>(label.size());
  const int sum = std::accumulate(label.begin(), label.end(), 0);
  switch (d.kind) {
    case ManifoldKind::OrthF:
      return real_dim(d.field) * sum - r;
    case ManifoldKind::SpecialOrth:
      return sum - r;
    case ManifoldKind::CplxStr:
      return 2 * (sum - r);
    case ManifoldKind::Lagrangian:
      return sum;
    case ManifoldKind::Grass: {
      int ind = 0;
      for (int sidx = 0; sidx < r; ++sidx) ind += label[sidx] - (sidx + 1);
      return 2 * ind;
    }
    default:
      throw std::logic_error("index_closed: unknown kind");
  }
}

inline CriticalPoint critical_point(const MorseSetup& s, const std::vector<int>& label) {
  const ManifoldDescriptor& d = s.descriptor;
  ManifoldPoint pt = d.kind == ManifoldKind::FlagU ? flag_point(d, label)
                                                   : sigma_point(d, label);
  CriticalPoint c{label, std::move(pt), index_closed(s, label), 0.0};
  c.f = f_value(s, c.point);
  return c;
}

inline std::vector<CriticalPoint> enumerate_critical(const MorseSetup& s) {
  const ManifoldDescriptor& d = s.descriptor;
  std::vector<std::vector<int>> labels;
  if (d.kind == ManifoldKind::FlagU) {
    std::vector<int> perm(d.n);
    std::iota(perm.begin(), perm.end(), 1);
    do labels.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    for (std::uint32_t mask = 0; mask < (1u << d.n); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < d.n; ++i)
        if (mask & (1u << i)) I.push_back(i + 1);
      if (d.kind == ManifoldKind::Grass && static_cast<int>(I.size()) != d.k) continue;
      if (d.kind == ManifoldKind::SpecialOrth && I.size() % 2 != 0) continue;
      labels.push_back(std::move(I));
    }
    std::sort(labels.begin(), labels.end());
  }
  std::vector<CriticalPoint> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    CriticalPoint c = critical_point(s, l);
    if (norm(gradient_closed(s, c.point)) > kCriticalGradTol)
      throw std::runtime_error("enumerate_critical: nonzero gradient at " +
                               label_string(d, l));
    out.push_back(std::move(c));
  }
  return out;
}

// --- Hessian -------------------------------------------------------------------

namespace detail {
// one-sided quotient [grad(retract(x0 + h u)) - grad(x0)] / h
inline Matrix hessian_fd_forward(const MorseSetup& s, const CriticalPoint& c,
                                 const Matrix& u, double h = kHessianFdStep) {
  const double nu = norm(u);
  if (nu == 0.0) return u;
  const ManifoldPoint moved = retract(s.descriptor, c.point.x + u.scaled(h / nu));
  const Matrix g1 = gradient_field(s, moved.x);
  const Matrix g0 = gradient_field(s, c.point.x);
  return (g1 - g0).scaled(nu / h);
}

// central quotient, second-order accurate; used where no closed form exists
inline Matrix hessian_fd_central(const MorseSetup& s, const CriticalPoint& c,
                                 const Matrix& u, double h = kHessianFdStep) {
  const double nu = norm(u);
  if (nu == 0.0) return u;
  const ManifoldPoint up = retract(s.descriptor, c.point.x + u.scaled(h / nu));
  const ManifoldPoint dn = retract(s.descriptor, c.point.x - u.scaled(h / nu));
  return (gradient_field(s, up.x) - gradient_field(s, dn.x)).scaled(nu / (2.0 * h));
}
}  // namespace detail

inline Matrix hessian_apply(const MorseSetup& s, const CriticalPoint& c, const Matrix& u,
                            double tangent_tol = 1e-6) {
  const ManifoldDescriptor& d = s.descriptor;
  const double nu = norm(u);
  if (nu > 0.0 && norm(normal_project(c.point, u)) > tangent_tol * nu)
    throw std::invalid_argument("hessian_apply: u is not tangent at the critical point");
  const Matrix& x0 = c.point.x;
  switch (d.kind) {
    case ManifoldKind::Grass:
      return (u * s.a - s.a * u) * x0;
    case ManifoldKind::CplxStr:
      return (s.a * u - u * s.a) * x0;
    case ManifoldKind::OrthF:
    case ManifoldKind::SpecialOrth:
      return (u * s.a - s.a * u.adjoint()) * x0;
    case ManifoldKind::Lagrangian:
      return (u * s.a - s.a * u.conj()) * x0;
    case ManifoldKind::FlagU:
      return structure_project(d, detail::hessian_fd_central(s, c, u));
  }
  throw std::logic_error("hessian_apply: unknown kind");
}

// labeled eigenvector with its predicted Hessian eigenvalue
struct LabeledTangent {
  std::string label;
  Matrix vector;
  double eigenvalue;
};

// The explicit diagonalizing bases at sigma_I for the three kinds whose
// case analysis is written out: b/c pairs on I x J for the Grassmannian,
// beta on I x I and J x J plus b on I x J for O(n;R), and b on I x J with
// i b on pairs inside I and inside J for the Lagrangian Grassmannian.
// Other kinds have no such table and fall back to the numeric frame.
struct CanonicalBasis {
  std::vector<LabeledTangent> vectors;
  bool canonical = true;  // false: tangent_frame fallback, no predictions
};

inline CanonicalBasis canonical_tangent_basis(const MorseSetup& s, const CriticalPoint& c) {
  const ManifoldDescriptor& d = s.descriptor;
  const int n = d.n;
  std::vector<int> in_I(n + 1, 0);
  if (d.kind != ManifoldKind::FlagU)
    for (int i : c.label) in_I[i] = 1;
  const auto& lam = s.lambda;
  CanonicalBasis out;

  auto name = [](const char* base, int si, int ti) {
    std::ostringstream os;
    os << base << "_{" << si << "," << ti << "}";
    return os.str();
  };

  switch (d.kind) {
    case ManifoldKind::Grass: {
      for (int si = 1; si <= n; ++si)
        for (int ti = 1; ti <= n; ++ti) {
          if (!(in_I[si] && !in_I[ti])) continue;  // (s,t) in I x J
          const double eig = lam[ti - 1] - lam[si - 1];
          out.vectors.push_back({name("b", si, ti), basis_b(Field::C, n, si - 1, ti - 1), eig});
          out.vectors.push_back({name("c", si, ti), basis_c(n, si - 1, ti - 1), eig});
        }
      return out;
    }
    case ManifoldKind::OrthF:
      if (d.field != Field::R) break;
      [[fallthrough]];
    case ManifoldKind::SpecialOrth: {
      for (int si = 1; si <= n; ++si)
        for (int ti = si + 1; ti <= n; ++ti) {
          if (in_I[si] && in_I[ti])
            out.vectors.push_back({name("beta", si, ti), basis_beta(Field::R, n, si - 1, ti - 1),
                                   -(lam[ti - 1] + lam[si - 1])});
          else if (!in_I[si] && !in_I[ti])
            out.vectors.push_back({name("beta", si, ti), basis_beta(Field::R, n, si - 1, ti - 1),
                                   lam[ti - 1] + lam[si - 1]});
        }
      for (int si = 1; si <= n; ++si)
        for (int ti = 1; ti <= n; ++ti)
          if (in_I[si] && !in_I[ti])
            out.vectors.push_back({name("b", si, ti), basis_b(Field::R, n, si - 1, ti - 1),
                                   lam[ti - 1] - lam[si - 1]});
      return out;
    }
    case ManifoldKind::Lagrangian: {
      for (int si = 1; si <= n; ++si)
        for (int ti = 1; ti <= n; ++ti)
          if (in_I[si] && !in_I[ti])
            out.vectors.push_back({name("b", si, ti), basis_b(Field::C, n, si - 1, ti - 1),
                                   lam[ti - 1] - lam[si - 1]});
      for (int si = 1; si <= n; ++si)
        for (int ti = si; ti <= n; ++ti) {
          if (in_I[si] && in_I[ti])
            out.vectors.push_back({name("ib", si, ti), basis_ib(n, si - 1, ti - 1),
                                   -(lam[ti - 1] + lam[si - 1])});
          else if (!in_I[si] && !in_I[ti])
            out.vectors.push_back({name("ib", si, ti), basis_ib(n, si - 1, ti - 1),
                                   lam[ti - 1] + lam[si - 1]});
        }
      return out;
    }
    default:
      break;
  }

  out.canonical = false;
  int j = 0;
  for (const auto& e : tangent_frame(c.point))
    out.vectors.push_back({"frame_" + std::to_string(j++), e, 0.0});
  return out;
}

// signature of the Hessian form over a tangent frame
inline int index_numeric(const MorseSetup& s, const CriticalPoint& c,
                         double tau_rel = kDegeneracyTau) {
  const std::vector<Matrix> frame = tangent_frame(c.point);
  const int m = static_cast<int>(frame.size());
  std::vector<Matrix> images;
  images.reserve(m);
  for (const auto& e : frame) images.push_back(hessian_apply(s, c, e));
  Matrix gram(Field::R, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double v = 0.5 * (inner(images[i], frame[j]) + inner(images[j], frame[i]));
      gram(i, j) = Scalar(v);
      gram(j, i) = Scalar(v);
    }
  const EigSym eig = jacobi_eigh(gram);
  const double radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double tau = tau_rel * radius;
  int negatives = 0;
  for (double v : eig.values) {
    if (std::abs(v) < tau)
      throw std::runtime_error("index_numeric: degenerate Hessian eigenvalue at " +
                               label_string(s.descriptor, c.label));
    if (v < 0.0) ++negatives;
  }
  return negatives;
}

// --- Betti data -----------------------------------------------------------------

enum class Ring { Z, Z2 };

struct PoincarePolynomial {
  Ring ring = Ring::Z;
  std::string component;          // "" for connected kinds, "Pf>0" / "Pf<0" for CplxStr
  std::vector<long long> coeff;   // by degree

  long long total() const { return std::accumulate(coeff.begin(), coeff.end(), 0LL); }
};

inline bool ring_allowed(const ManifoldDescriptor& d, Ring ring) {
  const bool z2_only = d.kind == ManifoldKind::SpecialOrth ||
                       d.kind == ManifoldKind::Lagrangian ||
                       (d.kind == ManifoldKind::OrthF && d.field == Field::R);
  return ring == Ring::Z2 || !z2_only;
}

inline std::vector<PoincarePolynomial> poincare(const MorseSetup& s, Ring ring) {
  const ManifoldDescriptor& d = s.descriptor;
  if (!ring_allowed(d, ring))
    throw std::invalid_argument("poincare: " + d.name() +
                                " is perfect over Z2 only; request ring Z2");
  const auto critical = enumerate_critical(s);
  const int dim = d.real_dimension();

  auto tally = [&](auto&& pred, const std::string& tag) {
    PoincarePolynomial p;
    p.ring = ring;
    p.component = tag;
    p.coeff.assign(dim + 1, 0);
    for (const auto& c : critical)
      if (pred(c)) ++p.coeff[c.index];
    return p;
  };

  if (d.kind == ManifoldKind::CplxStr) {
    auto pf_sign = [](const CriticalPoint& c) { return pfaffian_real(c.point.x) > 0.0; };
    return {tally([&](const CriticalPoint& c) { return pf_sign(c); }, "Pf>0"),
            tally([&](const CriticalPoint& c) { return !pf_sign(c); }, "Pf<0")};
  }
  return {tally([](const CriticalPoint&) { return true; }, "")};
}

inline long long euler_characteristic(const MorseSetup& s) {
  long long chi = 0;
  for (const auto& c : enumerate_critical(s)) chi += c.index % 2 == 0 ? 1 : -1;
  return chi;
}

}  // namespace matmorse
