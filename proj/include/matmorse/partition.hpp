#pragma once

// Integer partitions: weakly decreasing labels for symmetric-function bases
// and Schubert classes, with the enumeration helpers the ring layer needs.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace matmorse {

using Partition = std::vector<int>;  // weakly decreasing, no trailing zeros

inline Partition normalize_partition(Partition p) {
  for (int v : p)
    if (v < 0) throw std::invalid_argument("partition parts must be nonnegative");
  std::sort(p.begin(), p.end(), std::greater<>());
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline int weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[i - 1]) return false;
  return !p.empty() ? p.back() > 0 : true;
}

inline bool is_strict(const Partition& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] >= p[i - 1]) return false;
  return p.empty() || p.back() > 0;
}

inline std::string partition_string(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

// all partitions of the given weight with bounded length and part size
inline std::vector<Partition> partitions_of(int w, int max_len, int max_part) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) { out.push_back(cur); return; }
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, w, std::min(w, max_part));
  return out;
}

// all partitions inside a rows x cols box, every weight, lex-sorted
inline std::vector<Partition> partitions_in_box(int rows, int cols) {
  std::vector<Partition> out{{}};
  Partition cur;
  auto rec = [&](auto&& self, int cap) -> void {
    if (static_cast<int>(cur.size()) == rows) return;
    for (int part = 1; part <= cap; ++part) {
      cur.push_back(part);
      out.push_back(cur);
      self(self, part);
      cur.pop_back();
    }
  };
  rec(rec, cols);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Partition> strict_partitions_of(int w, int max_part) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) { out.push_back(cur); return; }
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part - 1);
      cur.pop_back();
    }
  };
  rec(rec, w, max_part);
  return out;
}

inline bool contains_partition(const Partition& outer, const Partition& inner) {
  if (inner.size() > outer.size()) return false;
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (inner[i] > outer[i]) return false;
  return true;
}

}  // namespace matmorse
