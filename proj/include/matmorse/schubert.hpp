#pragma once

// Cohomology rings through symmetric functions: basis expansion by greedy
// leading-term subtraction, the two quotient reductions, structure
// constants, an independent Littlewood-Richardson tableau oracle, and the
// map sending a critical label to its symmetric-function image
//
//   SO(n):   m_{(i_r-1 >= ... >= i_1-1)}   in t_1..t_{n'}
//   G(n,k):  S_{(i_k-k >= ... >= i_1-1)}   in x_1..x_k
//   CS(n):   P_{(i_r-1 > ... > i_1-1)}     in y_1..y_n
//
// calibrated so that coordinate labels hit sigma_I and the cohomological
// degree of the class equals the Morse index of sigma_I.

#include "matmorse/morse.hpp"
#include "matmorse/schur_p.hpp"
#include "matmorse/sympoly.hpp"

namespace matmorse {

enum class SymBasis { Monomial, Schur, SchurP };

inline SymPoly basis_element(SymBasis basis, const Partition& lambda, int vars) {
  switch (basis) {
    case SymBasis::Monomial: return monomial_sym(lambda, vars);
    case SymBasis::Schur: return schur(lambda, vars);
    case SymBasis::SchurP: return schur_p(lambda, vars);
  }
  throw std::logic_error("basis_element: unknown basis");
}

// Greedy expansion on the lex-leading key.  Every basis element is
// m_lambda plus dominance-lower terms with unit leading coefficient, so
// subtracting coeff * basis(leading key) strictly lowers the leading key;
// a leading key outside the basis index set means f is not in the span.
inline std::map<Partition, mpz_class> expand_in_basis(const SymPoly& f, SymBasis basis) {
  std::map<Partition, mpz_class> out;
  SymPoly residue = f;
  while (!residue.is_zero()) {
    const auto lead = std::prev(residue.terms().end());  // lex-greatest key
    const Partition lambda = partition_of_key(lead->first);
    if (basis == SymBasis::SchurP && !is_strict(lambda))
      throw std::runtime_error("expand_in_basis: leading key " + partition_string(lambda) +
                               " is not a strict partition; not in the P span");
    const mpz_class coeff = lead->second;
    SymPoly b = basis_element(basis, lambda, f.vars());
    if (f.mod2()) b = b.with_mod2();
    residue = residue - b.scaled(coeff);
    if (!residue.terms().empty() && residue.terms().rbegin()->first >= lead->first)
      throw std::runtime_error("expand_in_basis: leading term did not cancel");
    out[lambda] += coeff;
    if (f.mod2()) out[lambda] = ((out[lambda] % 2) + 2) % 2;
    if (out[lambda] == 0) out.erase(lambda);
  }
  return out;
}

// --- ring presentations -----------------------------------------------------

struct RingSpec {
  enum class Kind { GrassQuotient, TruncatedZ2, SchurPRing };
  Kind kind;
  int n = 0;
  int k = 0;       // GrassQuotient
  int nprime = 0;  // TruncatedZ2

  int vars() const {
    switch (kind) {
      case Kind::GrassQuotient: return k;
      case Kind::TruncatedZ2: return nprime;
      case Kind::SchurPRing: return n;
    }
    return 0;
  }
  SymBasis basis() const {
    switch (kind) {
      case Kind::GrassQuotient: return SymBasis::Schur;
      case Kind::TruncatedZ2: return SymBasis::Monomial;
      case Kind::SchurPRing: return SymBasis::SchurP;
    }
    return SymBasis::Monomial;
  }
};

inline RingSpec grass_quotient(int n, int k) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("grass_quotient: need 1 <= k <= n-1");
  return {RingSpec::Kind::GrassQuotient, n, k, 0};
}
inline RingSpec truncated_z2(int n) {
  if (n < 2) throw std::invalid_argument("truncated_z2: n >= 2 required");
  return {RingSpec::Kind::TruncatedZ2, n, 0, 2 * (n / 2)};
}
inline RingSpec schur_p_ring(int n) {
  if (n < 1) throw std::invalid_argument("schur_p_ring: n >= 1 required");
  return {RingSpec::Kind::SchurPRing, n, 0, 0};
}

// the relation p_i: the degree-(n-i+1) component of prod_s (1+x_s)^{-1},
// i.e. (-1)^{n-i+1} h_{n-i+1}(x_1..x_k); each must reduce to zero
inline SymPoly grass_relation(const RingSpec& spec, int i) {
  if (spec.kind != RingSpec::Kind::GrassQuotient || i < 1 || i > spec.k)
    throw std::invalid_argument("grass_relation: need a GrassQuotient spec and 1 <= i <= k");
  const int deg = spec.n - i + 1;
  const SymPoly h = complete_homogeneous(deg, spec.k);
  return deg % 2 == 0 ? h : h.scaled(-1);
}

inline SymPoly reduce(const SymPoly& f, const RingSpec& spec) {
  if (f.vars() != spec.vars())
    throw std::invalid_argument("reduce: variable count does not match the ring");
  switch (spec.kind) {
    case RingSpec::Kind::TruncatedZ2: {
      // delete monomials with any exponent >= n, coefficients mod 2
      SymPoly r(spec.vars(), true);
      for (const auto& [k, c] : f.terms())
        if (k.front() < spec.n) r.add_term(k, c);
      return r;
    }
    case RingSpec::Kind::GrassQuotient: {
      // Schur expansion, then delete partitions wider than the box
      SymPoly r(spec.vars());
      for (const auto& [lambda, c] : expand_in_basis(f, SymBasis::Schur)) {
        if (!lambda.empty() && lambda.front() > spec.n - spec.k) continue;
        r = r + schur(lambda, spec.vars()).scaled(c);
      }
      return r;
    }
    case RingSpec::Kind::SchurPRing:
      return f;  // products are computed in the polynomial ring directly
  }
  throw std::logic_error("reduce: unknown ring");
}

inline std::map<Partition, mpz_class> structure_constants(const RingSpec& spec,
                                                          const Partition& lambda,
                                                          const Partition& mu) {
  const int v = spec.vars();
  SymPoly prod = basis_element(spec.basis(), lambda, v) * basis_element(spec.basis(), mu, v);
  const SymPoly reduced = reduce(prod, spec);
  auto out = expand_in_basis(reduced, spec.basis());
  if (spec.kind == RingSpec::Kind::TruncatedZ2)
    for (const auto& [nu, c] : out)
      if (c != 0 && c != 1)
        throw std::runtime_error("structure_constants: mod-2 coefficient out of {0,1}");
  return out;
}

// --- independent Littlewood-Richardson oracle ---------------------------------

namespace detail {
// count LR skew tableaux of shape nu/lambda with content mu: semistandard
// fillings whose reverse reading word is a lattice word
inline long long count_lr_tableaux(const Partition& nu, const Partition& lambda,
                                   const Partition& mu) {
  if (!contains_partition(nu, lambda)) return 0;
  if (weight(nu) != weight(lambda) + weight(mu)) return 0;

  const int rows = static_cast<int>(nu.size());
  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(nu[i], 0);
  std::vector<int> remaining(mu.begin(), mu.end());

  // cells of the skew shape in reverse reading order: rows top to bottom,
  // each row right to left; filling in this order makes the lattice
  // condition checkable incrementally
  struct Cell { int r, c; };
  std::vector<Cell> cells;
  for (int r = 0; r < rows; ++r) {
    const int from = r < static_cast<int>(lambda.size()) ? lambda[r] : 0;
    for (int c = nu[r] - 1; c >= from; --c) cells.push_back({r, c});
  }

  std::vector<int> seen(mu.size() + 2, 0);  // counts along the reading word
  long long count = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == cells.size()) { ++count; return; }
    const auto [r, c] = cells[pos];
    for (int val = 1; val <= static_cast<int>(mu.size()); ++val) {
      if (remaining[val - 1] == 0) continue;
      // lattice: after placing, #val <= #(val-1)
      if (val > 1 && seen[val] + 1 > seen[val - 1]) continue;
      // weakly increasing to the right (the right neighbor is already placed)
      if (c + 1 < nu[r] && val > fill[r][c + 1]) continue;
      // strictly increasing downward against the placed cell above; cells
      // inside lambda impose nothing
      if (r > 0 && c < nu[r - 1]) {
        const int above_from = r - 1 < static_cast<int>(lambda.size()) ? lambda[r - 1] : 0;
        if (c >= above_from && fill[r - 1][c] >= val) continue;
      }
      fill[r][c] = val;
      --remaining[val - 1];
      ++seen[val];
      self(self, pos + 1);
      fill[r][c] = 0;
      ++remaining[val - 1];
      --seen[val];
    }
  };
  rec(rec, 0);
  return count;
}
}  // namespace detail

inline std::map<Partition, mpz_class> lr_oracle(const Partition& lambda, const Partition& mu) {
  if (!is_partition(lambda) || !is_partition(mu))
    throw std::invalid_argument("lr_oracle: partitions required");
  std::map<Partition, mpz_class> out;
  const int total = weight(lambda) + weight(mu);
  const int max_len = static_cast<int>(lambda.size() + mu.size());
  const int max_part = (lambda.empty() ? 0 : lambda[0]) + (mu.empty() ? 0 : mu[0]);
  for (const auto& nu : partitions_of(total, std::max(max_len, 1), std::max(max_part, 1))) {
    const long c = static_cast<long>(detail::count_lr_tableaux(nu, lambda, mu));
    if (c > 0) out[nu] = mpz_class(c);
  }
  return out;
}

// --- Schubert class <-> symmetric function image ------------------------------

struct SchubertImage {
  Partition partition;
  SymPoly poly;
};

inline SchubertImage theorem_image(const ManifoldDescriptor& d, const std::vector<int>& I) {
  validate_subset_label(d, I);
  switch (d.kind) {
    case ManifoldKind::SpecialOrth: {
      Partition lambda;
      for (int i : I) lambda.push_back(i - 1);
      lambda = normalize_partition(lambda);
      return {lambda, monomial_sym(lambda, d.nprime())};
    }
    case ManifoldKind::Grass: {
      Partition lambda;
      for (std::size_t s = 0; s < I.size(); ++s)
        lambda.push_back(I[s] - static_cast<int>(s + 1));
      lambda = normalize_partition(lambda);
      return {lambda, schur(lambda, d.k)};
    }
    case ManifoldKind::CplxStr: {
      Partition lambda;
      for (int i : I) lambda.push_back(i - 1);
      lambda = normalize_partition(lambda);
      return {lambda, schur_p(lambda, d.n)};
    }
    default:
      throw std::invalid_argument("theorem_image: classes live on SO(n), G(n,k) and CS(n)");
  }
}

}  // namespace matmorse
