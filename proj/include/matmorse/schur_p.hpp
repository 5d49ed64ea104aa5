#pragma once

// Schur Q- and P-functions.  Q_r comes from the generating series
// prod (1+y_i z)/(1-y_i z) = (sum e_j z^j)(sum h_m z^m), two-row Q_{(r,s)}
// from the quadratic recursion, general Q_lambda as the Pfaffian of the
// two-row values, and P_lambda = 2^{-l(lambda)} Q_lambda, which must divide
// exactly over the integers.

#include "matmorse/sympoly.hpp"

namespace matmorse {

inline SymPoly q_one_row(int r, int vars) {
  if (r < 0) return SymPoly::zero(vars);
  SymPoly acc(vars);
  for (int j = 0; j <= r; ++j) {
    const SymPoly e = elementary(j, vars);
    if (!e.is_zero()) acc = acc + e * complete_homogeneous(r - j, vars);
  }
  return acc;
}

// Q_{(r,s)} = Q_r Q_s + 2 sum_{i=1..s} (-1)^i Q_{r+i} Q_{s-i}, r > s >= 0
inline SymPoly q_two_row(int r, int s, int vars) {
  if (s < 0 || r <= s)
    throw std::invalid_argument("q_two_row: expects r > s >= 0");
  SymPoly acc = q_one_row(r, vars) * q_one_row(s, vars);
  for (int i = 1; i <= s; ++i) {
    const SymPoly prod = q_one_row(r + i, vars) * q_one_row(s - i, vars);
    acc = i % 2 == 1 ? acc - prod.scaled(2) : acc + prod.scaled(2);
  }
  return acc;
}

namespace detail {
inline SymPoly sympoly_pfaffian(const std::vector<std::vector<SymPoly>>& m, int vars) {
  const int n = static_cast<int>(m.size());
  if (n % 2 != 0) return SymPoly::zero(vars);
  if (n == 0) return SymPoly::one(vars);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto rec = [&](auto&& self, const std::vector<int>& live) -> SymPoly {
    if (live.empty()) return SymPoly::one(vars);
    SymPoly acc(vars);
    int sign = 1;
    for (std::size_t j = 1; j < live.size(); ++j) {
      std::vector<int> rest;
      for (std::size_t t = 1; t < live.size(); ++t)
        if (t != j) rest.push_back(live[t]);
      const SymPoly term = m[live[0]][live[j]] * self(self, rest);
      acc = sign > 0 ? acc + term : acc - term;
      sign = -sign;
    }
    return acc;
  };
  return rec(rec, idx);
}
}  // namespace detail

inline SymPoly q_function(const Partition& lambda, int vars) {
  if (!is_strict(lambda)) throw std::invalid_argument("q_function: strict partition required");
  const int l = static_cast<int>(lambda.size());
  if (l == 0) return SymPoly::one(vars);
  if (l == 1) return q_one_row(lambda[0], vars);
  if (l == 2) return q_two_row(lambda[0], lambda[1], vars);
  Partition padded = lambda;
  if (padded.size() % 2 != 0) padded.push_back(0);
  const int n = static_cast<int>(padded.size());
  std::vector<std::vector<SymPoly>> m(n, std::vector<SymPoly>(n, SymPoly::zero(vars)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m[i][j] = padded[j] == 0 ? q_one_row(padded[i], vars)
                               : q_two_row(padded[i], padded[j], vars);
      m[j][i] = m[i][j].scaled(-1);
    }
  return detail::sympoly_pfaffian(m, vars);
}

inline SymPoly schur_p(const Partition& lambda, int vars) {
  if (!is_strict(lambda)) throw std::invalid_argument("schur_p: strict partition required");
  const int l = static_cast<int>(lambda.size());
  if (l > vars) return SymPoly::zero(vars);
  const SymPoly q = q_function(lambda, vars);
  mpz_class denom = 1;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), l);
  SymPoly p(vars);
  for (const auto& [k, c] : q.terms()) {
    if (!mpz_divisible_p(c.get_mpz_t(), denom.get_mpz_t()))
      throw std::runtime_error("schur_p: Q_lambda is not divisible by 2^l");
    p.add_term(k, c / denom);
  }
  return p;
}

}  // namespace matmorse
