#pragma once

#include <cmath>

namespace tbfrac {

/// Value together with its first and second derivative with respect to one
/// variable. Arithmetic propagates both derivatives exactly (forward mode).
template <typename Scalar>
struct Jet {
  Scalar v{0};
  Scalar d1{0};
  Scalar d2{0};

  static Jet constant(Scalar c) { return {c, Scalar(0), Scalar(0)}; }
  static Jet variable(Scalar x) { return {x, Scalar(1), Scalar(0)}; }

  Jet operator-() const { return {-v, -d1, -d2}; }
  Jet& operator+=(const Jet& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet& operator-=(const Jet& o) { return *this += -o; }
};

template <typename S>
Jet<S> operator+(Jet<S> a, const Jet<S>& b) {
  return a += b;
}

template <typename S>
Jet<S> operator-(Jet<S> a, const Jet<S>& b) {
  return a -= b;
}

template <typename S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + S(2) * a.d1 * b.d1 + a.v * b.d2};
}

template <typename S>
Jet<S> operator*(S s, const Jet<S>& a) {
  return {s * a.v, s * a.d1, s * a.d2};
}

template <typename S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) {
  const S inv = S(1) / b.v;
  const S q = a.v * inv;
  const S q1 = (a.d1 - q * b.d1) * inv;
  const S q2 = (a.d2 - S(2) * q1 * b.d1 - q * b.d2) * inv;
  return {q, q1, q2};
}

/// f(a) with f', f'' supplied at a.v (chain rule to second order).
template <typename S>
Jet<S> chain(const Jet<S>& a, S f, S df, S ddf) {
  return {f, df * a.d1, ddf * a.d1 * a.d1 + df * a.d2};
}

template <typename S>
Jet<S> sin(const Jet<S>& a) {
  using std::cos;
  using std::sin;
  const S s = sin(a.v);
  return chain(a, s, cos(a.v), -s);
}

template <typename S>
Jet<S> cos(const Jet<S>& a) {
  using std::cos;
  using std::sin;
  const S c = cos(a.v);
  return chain(a, c, -sin(a.v), -c);
}

template <typename S>
Jet<S> sinh(const Jet<S>& a) {
  using std::cosh;
  using std::sinh;
  const S s = sinh(a.v);
  return chain(a, s, cosh(a.v), s);
}

template <typename S>
Jet<S> cosh(const Jet<S>& a) {
  using std::cosh;
  using std::sinh;
  const S c = cosh(a.v);
  return chain(a, c, sinh(a.v), c);
}

template <typename S>
Jet<S> exp(const Jet<S>& a) {
  using std::exp;
  const S e = exp(a.v);
  return chain(a, e, e, e);
}

/// a^p for a real exponent p; a.v must be positive unless p is integral.
template <typename S>
Jet<S> pow(const Jet<S>& a, S p) {
  using std::pow;
  if (p == S(0)) return Jet<S>::constant(S(1));
  const S f = pow(a.v, p);
  const S df = p == S(1) ? S(1) : p * pow(a.v, p - S(1));
  const S ddf = (p == S(1)) ? S(0) : (p == S(2) ? S(2) : p * (p - S(1)) * pow(a.v, p - S(2)));
  return chain(a, f, df, ddf);
}

}  // namespace tbfrac
