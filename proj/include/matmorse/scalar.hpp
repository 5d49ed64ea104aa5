#pragma once

// Scalar arithmetic over the three coefficient fields R, C and H.
//
// A Scalar always carries four real components (1, i, j, k).  Real and
// complex values simply leave the upper components at zero; the quaternion
// product restricts to complex and real multiplication on those subspaces,
// so one set of formulas serves all three fields.  The enclosing matrix
// carries the field tag and enforces that entries stay inside it.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matmorse {

enum class Field : std::uint8_t { R, C, H };

inline int real_dim(Field f) {
  switch (f) {
    case Field::R: return 1;
    case Field::C: return 2;
    case Field::H: return 4;
  }
  return 0;
}

inline const char* field_name(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
  }
  return "?";
}

struct Scalar {
  // components w + x i + y j + z k
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  Scalar() = default;
  Scalar(double w) : c{w, 0.0, 0.0, 0.0} {}
  Scalar(double w, double x) : c{w, x, 0.0, 0.0} {}
  Scalar(double w, double x, double y, double z) : c{w, x, y, z} {}

  double re() const { return c[0]; }

  bool fits(Field f) const {
    switch (f) {
      case Field::R: return c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0;
      case Field::C: return c[2] == 0.0 && c[3] == 0.0;
      case Field::H: return true;
    }
    return false;
  }

  Scalar operator+(const Scalar& o) const {
    return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
  }
  Scalar operator-(const Scalar& o) const {
    return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
  }
  Scalar operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }

  // Hamilton product; associative, non-commutative on j,k.
  Scalar operator*(const Scalar& o) const {
    const double a = c[0], b = c[1], cc = c[2], d = c[3];
    const double e = o.c[0], f = o.c[1], g = o.c[2], h = o.c[3];
    return {a * e - b * f - cc * g - d * h,
            a * f + b * e + cc * h - d * g,
            a * g - b * h + cc * e + d * f,
            a * h + b * g - cc * f + d * e};
  }

  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  Scalar scaled(double s) const { return {c[0] * s, c[1] * s, c[2] * s, c[3] * s}; }

  Scalar conj() const { return {c[0], -c[1], -c[2], -c[3]}; }

  double norm2() const {
    return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
  }
  double abs() const { return std::sqrt(norm2()); }

  Scalar inverse() const {
    const double n2 = norm2();
    if (n2 == 0.0) throw std::domain_error("Scalar::inverse: zero divisor");
    return conj().scaled(1.0 / n2);
  }

  bool operator==(const Scalar& o) const { return c == o.c; }
};

inline Scalar operator*(double s, const Scalar& q) { return q.scaled(s); }

// real dot of the component vectors = Re(conj(a) * b)
inline double component_dot(const Scalar& a, const Scalar& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline const Scalar kOne{1.0};
inline const Scalar kI{0.0, 1.0};
inline const Scalar kJ{0.0, 0.0, 1.0, 0.0};
inline const Scalar kK{0.0, 0.0, 0.0, 1.0};

}  // namespace matmorse
