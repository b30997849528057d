#ifndef ISINGTREE_COMPLEX_HPP
#define ISINGTREE_COMPLEX_HPP

#include <cmath>

namespace isingtree {

/// Complex scalar with explicit arithmetic. The library defines its own
/// multiply/add so the operation order is pinned down and reproducible
/// across toolchains rather than inherited from an ambient complex type.
struct Cx {
  double re = 0.0;
  double im = 0.0;

  constexpr Cx() = default;
  constexpr Cx(double r, double i = 0.0) : re(r), im(i) {}

  friend constexpr Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr Cx operator*(Cx a, Cx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr Cx operator*(double s, Cx a) { return {s * a.re, s * a.im}; }
  friend constexpr Cx operator*(Cx a, double s) { return {s * a.re, s * a.im}; }

  Cx& operator+=(Cx b) { re += b.re; im += b.im; return *this; }
  Cx& operator*=(Cx b) { *this = *this * b; return *this; }

  friend constexpr Cx conj(Cx a) { return {a.re, -a.im}; }
  friend double abs(Cx a) { return std::hypot(a.re, a.im); }
};

/// exp(z) for the complex scalar above.
inline Cx cexp(Cx z) {
  const double m = std::exp(z.re);
  return {m * std::cos(z.im), m * std::sin(z.im)};
}

}  // namespace isingtree

#endif  // ISINGTREE_COMPLEX_HPP
