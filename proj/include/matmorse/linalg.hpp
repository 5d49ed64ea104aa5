#pragma once

// Cyclic Jacobi eigensolver for real symmetric matrices, Gram-Schmidt
// orthonormalization under the trace inner product, and a Hermitian
// eigendecomposition obtained through the standard real embedding
//   a+bi -> [[a,-b],[b,a]],
// which keeps all spectral work inside the real symmetric solver.

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matmorse/matrix.hpp"

namespace matmorse {

inline constexpr double kSymmetryTol = 1e-12;     // relative, jacobi_eigh input
inline constexpr double kOrthoDropTol = 1e-9;     // Gram-Schmidt survivor threshold
inline constexpr int kJacobiMaxSweeps = 100;

struct EigSym {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns, orthogonal, A = V D V^t
};

// Jacobi rotations on a real symmetric matrix.  Sizes stay small here
// (tangent frames and real embeddings, well under 100), where sweeps win
// over QR machinery.
inline EigSym jacobi_eigh(const Matrix& s,
                          double symmetry_tol = kSymmetryTol,
                          int max_sweeps = kJacobiMaxSweeps) {
  if (s.field() != Field::R) throw std::invalid_argument("jacobi_eigh: real matrices only");
  if (s.rows() != s.cols()) throw std::invalid_argument("jacobi_eigh: non-square");
  const int n = s.rows();
  const double scale = norm(s);
  if (norm(s - s.transpose()) > symmetry_tol * std::max(scale, 1.0))
    throw std::invalid_argument("jacobi_eigh: matrix not symmetric within tolerance");

  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i) * n + j] = 0.5 * (s(i, j).re() + s(j, i).re());
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

  auto off = [&]() {
    double o = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) o += 2.0 * A(i, j) * A(i, j);
    return std::sqrt(o);
  };

  const double stop = 1e-15 * std::max(scale, 1e-300);
  int sweep = 0;
  while (off() > stop) {
    if (++sweep > max_sweeps)
      throw std::runtime_error("jacobi_eigh: no convergence within sweep budget");
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) { A(p, q) = A(q, p) = 0.0; continue; }
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);
        const double app = A(p, p), aqq = A(q, q);
        A(p, p) = app - t * apq;
        A(q, q) = aqq + t * apq;
        A(p, q) = A(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = A(r, p), arq = A(r, q);
            A(r, p) = A(p, r) = arp - sn * (arq + tau * arp);
            A(r, q) = A(q, r) = arq + sn * (arp - tau * arq);
          }
          const double vrp = V(r, p), vrq = V(r, q);
          V(r, p) = vrp - sn * (vrq + tau * vrp);
          V(r, q) = vrq + sn * (vrp - tau * vrq);
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return A(x, x) > A(y, y); });

  EigSym out;
  out.values.resize(n);
  out.vectors = Matrix(Field::R, n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = A(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = Scalar(V(i, order[j]));
  }
  return out;
}

// Modified Gram-Schmidt with a second orthogonalization pass.  Near-zero
// vectors are dropped, so degenerate inputs shrink the output list.
inline std::vector<Matrix> orthonormalize(const std::vector<Matrix>& vs,
                                          double drop_tol = kOrthoDropTol) {
  std::vector<Matrix> basis;
  for (const auto& v0 : vs) {
    if (!basis.empty() && !basis.front().same_shape(v0))
      throw std::invalid_argument("orthonormalize: shape/field mismatch");
    Matrix v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v = v - b.scaled(inner(b, v));
    const double nv = norm(v);
    if (nv > drop_tol) basis.push_back(v.scaled(1.0 / nv));
  }
  return basis;
}

// real embedding of a complex matrix: blocks [[re,-im],[im,re]]
inline Matrix real_embedding(const Matrix& m) {
  if (m.field() != Field::C) throw std::invalid_argument("real_embedding: complex input expected");
  Matrix r(Field::R, 2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).c[0], im = m(i, j).c[1];
      r(2 * i, 2 * j) = Scalar(re);
      r(2 * i, 2 * j + 1) = Scalar(-im);
      r(2 * i + 1, 2 * j) = Scalar(im);
      r(2 * i + 1, 2 * j + 1) = Scalar(re);
    }
  return r;
}

struct EigHerm {
  std::vector<double> values;   // descending
  std::vector<Matrix> vectors;  // unit column vectors (n x 1 complex)
};

// in-place modified Gram-Schmidt over C on a list of column vectors;
// used to restore exact unitarity of eigenvector groups whose mutual
// orthogonality is limited by small spectral gaps
inline void complex_mgs(std::vector<Matrix>& cols) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t q = 0; q < j; ++q) {
        const Matrix coef = cols[q].adjoint() * cols[j];
        cols[j] = cols[j] - cols[q] * coef;
      }
    const double nv = norm(cols[j]);
    if (nv < 1e-8) throw std::runtime_error("complex_mgs: rank deficiency");
    cols[j] = cols[j].scaled(1.0 / nv);
  }
}

// Hermitian eigendecomposition via jacobi_eigh on the real embedding.  Each
// complex eigenvalue appears twice there; walking the embedded eigenvectors
// in descending order, a column is either a new complex direction or the
// i-multiple of one already taken, so greedy complex Gram-Schmidt recovers
// exactly one eigenvector per pair without any cluster bookkeeping.
inline EigHerm eigh_hermitian(const Matrix& h) {
  if (h.field() != Field::C) throw std::invalid_argument("eigh_hermitian: complex input expected");
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh_hermitian: non-square");
  const int n = h.rows();
  const Matrix herm = (h + h.adjoint()).scaled(0.5);
  const EigSym es = jacobi_eigh(real_embedding(herm));

  EigHerm out;
  for (int c = 0; c < 2 * n && static_cast<int>(out.vectors.size()) < n; ++c) {
    Matrix w(Field::C, n, 1);
    for (int i = 0; i < n; ++i)
      w(i, 0) = Scalar(es.vectors(2 * i, c).re(), es.vectors(2 * i + 1, c).re());
    for (const auto& b : out.vectors) {
      const Matrix coef = b.adjoint() * w;  // complex <b,w>
      w = w - b * coef;
    }
    if (norm(w) > 0.5) {
      out.values.push_back(es.values[c]);
      out.vectors.push_back(w.scaled(1.0 / norm(w)));
    }
  }
  if (static_cast<int>(out.vectors.size()) != n)
    throw std::runtime_error("eigh_hermitian: eigenvector extraction failed");
  return out;
}

}  // namespace matmorse
