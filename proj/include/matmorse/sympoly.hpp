#pragma once

// Sparse symmetric polynomials with arbitrary-precision integer
// coefficients.  A polynomial stores one representative per symmetric
// orbit: the exponent vector sorted descending (padded to the variable
// count).  Products expand both orbits fully and re-collect the sorted
// keys; basis expansion is greedy subtraction on the lex-leading key,
// valid because every basis element here is unitriangular against the
// monomial basis in dominance (hence lex) order.

#include <gmpxx.h>

#include <map>
#include <vector>

#include "matmorse/partition.hpp"

namespace matmorse {

using Exp = std::vector<int>;  // length = variable count

class SymPoly {
 public:
  SymPoly() = default;
  explicit SymPoly(int vars, bool mod2 = false) : vars_(vars), mod2_(mod2) {}

  static SymPoly zero(int vars) { return SymPoly(vars); }
  static SymPoly one(int vars) {
    SymPoly p(vars);
    p.add_term(Exp(vars, 0), 1);
    return p;
  }

  int vars() const { return vars_; }
  bool mod2() const { return mod2_; }
  const std::map<Exp, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // total degree of any term with a given key (keys are homogeneous per term)
  static int key_weight(const Exp& e) { return std::accumulate(e.begin(), e.end(), 0); }

  void add_term(Exp key, const mpz_class& coeff) {
    if (static_cast<int>(key.size()) != vars_)
      throw std::invalid_argument("SymPoly: key length must equal the variable count");
    if (!std::is_sorted(key.begin(), key.end(), std::greater<>()))
      throw std::invalid_argument("SymPoly: keys are descending exponent vectors");
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(key), coeff);
    if (!fresh) {
      it->second += coeff;
      reduce_entry(it);
    } else if (mod2_) {
      reduce_entry(it);
    }
  }

  SymPoly operator+(const SymPoly& o) const {
    require_compatible(o);
    SymPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
  }
  SymPoly operator-(const SymPoly& o) const {
    require_compatible(o);
    SymPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
  }
  SymPoly scaled(const mpz_class& s) const {
    SymPoly r(vars_, mod2_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
  }

  // full expansion: one entry per monomial of the symmetric orbit
  std::map<Exp, mpz_class> full_expand() const {
    std::map<Exp, mpz_class> out;
    for (const auto& [key, coeff] : terms_) {
      Exp perm = key;
      std::sort(perm.begin(), perm.end());
      do out[perm] = coeff;
      while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
  }

  SymPoly operator*(const SymPoly& o) const {
    require_compatible(o);
    SymPoly r(vars_, mod2_);
    const auto self_full = full_expand();
    const auto other_full = o.full_expand();
    std::map<Exp, mpz_class> prod;
    for (const auto& [ka, ca] : self_full)
      for (const auto& [kb, cb] : other_full) {
        Exp k(vars_);
        for (int i = 0; i < vars_; ++i) k[i] = ka[i] + kb[i];
        prod[k] += ca * cb;
      }
    for (auto& [k, c] : prod) {
      if (!std::is_sorted(k.begin(), k.end(), std::greater<>())) continue;
      r.add_term(k, c);
    }
    return r;
  }

  // number of distinct monomials in the orbit of a key
  static mpz_class orbit_size(const Exp& key) {
    std::map<int, int> mult;
    for (int e : key) ++mult[e];
    mpz_class count;
    mpz_fac_ui(count.get_mpz_t(), key.size());
    for (const auto& [e, m] : mult) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), m);
      count /= f;
    }
    return count;
  }

  mpz_class evaluate_ones() const {
    mpz_class t = 0;
    for (const auto& [k, c] : terms_) t += c * orbit_size(k);
    return t;
  }

  SymPoly with_mod2() const {
    SymPoly r(vars_, true);
    for (const auto& [k, c] : terms_) r.add_term(k, c);
    return r;
  }

 private:
  void require_compatible(const SymPoly& o) const {
    if (vars_ != o.vars_ || mod2_ != o.mod2_)
      throw std::invalid_argument("SymPoly: variable count or coefficient rings differ");
  }
  void reduce_entry(std::map<Exp, mpz_class>::iterator it) {
    if (mod2_) it->second = ((it->second % 2) + 2) % 2;
    if (it->second == 0) terms_.erase(it);
  }

  int vars_ = 0;
  bool mod2_ = false;
  std::map<Exp, mpz_class> terms_;
};

inline Exp key_of(const Partition& p, int vars) {
  if (static_cast<int>(p.size()) > vars)
    throw std::invalid_argument("partition is longer than the variable count");
  Exp k(vars, 0);
  std::copy(p.begin(), p.end(), k.begin());
  return k;
}

inline Partition partition_of_key(const Exp& k) {
  Partition p(k.begin(), k.end());
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// orbit sum of the monomial t^lambda
inline SymPoly monomial_sym(const Partition& lambda, int vars) {
  if (!is_partition(lambda)) throw std::invalid_argument("monomial_sym: not a partition");
  SymPoly p(vars);
  p.add_term(key_of(lambda, vars), 1);
  return p;
}

// complete homogeneous h_r: every partition of weight r that fits
inline SymPoly complete_homogeneous(int r, int vars) {
  if (r < 0) throw std::invalid_argument("complete_homogeneous: negative degree");
  SymPoly p(vars);
  for (const auto& mu : partitions_of(r, vars, r)) p.add_term(key_of(mu, vars), 1);
  if (r == 0) p.add_term(Exp(vars, 0), 1);
  return p;
}

// elementary e_r = m_{(1^r)}, zero beyond the variable count
inline SymPoly elementary(int r, int vars) {
  if (r < 0) throw std::invalid_argument("elementary: negative degree");
  if (r > vars) return SymPoly::zero(vars);
  if (r == 0) return SymPoly::one(vars);
  return monomial_sym(Partition(r, 1), vars);
}

// Schur polynomial by the Jacobi-Trudi determinant det(h_{l_i - i + j});
// expanded over column subsets with memoization
inline SymPoly schur(const Partition& lambda, int vars) {
  if (!is_partition(lambda)) throw std::invalid_argument("schur: not a partition");
  const int m = static_cast<int>(lambda.size());
  if (m == 0) return SymPoly::one(vars);

  std::vector<SymPoly> hs;  // h_0 .. h_{max}
  const int hmax = lambda[0] + m;
  for (int r = 0; r <= hmax; ++r) hs.push_back(complete_homogeneous(r, vars));
  auto entry = [&](int i, int j) -> SymPoly {
    const int deg = lambda[i] - i + j;
    if (deg < 0) return SymPoly::zero(vars);
    return hs[deg];
  };

  std::map<std::uint32_t, SymPoly> memo;
  auto minor = [&](auto&& self, int row, std::uint32_t colmask) -> SymPoly {
    if (row == m) return SymPoly::one(vars);
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    SymPoly acc(vars);
    int sign = 1, pos = 0;
    for (int j = 0; j < m; ++j) {
      if (!(colmask & (1u << j))) continue;
      const SymPoly e = entry(row, j);
      if (!e.is_zero()) {
        const SymPoly sub = self(self, row + 1, colmask & ~(1u << j));
        acc = sign > 0 ? acc + e * sub : acc - e * sub;
      }
      sign = -sign;
      ++pos;
    }
    memo.emplace(colmask, acc);
    return acc;
  };
  return minor(minor, 0, (1u << m) - 1);
}

}  // namespace matmorse
