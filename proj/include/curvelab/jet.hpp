#pragma once

// Truncated Taylor series of order 4. A Jet holds c_k = f^(k)(t) / k! for
// k = 0..4 at one expansion point; all arithmetic is truncated-series
// arithmetic, so the first k coefficients of any result depend only on the
// first k coefficients of its inputs. That property is what lets a jet that
// has been differentiated (and has lost its top coefficient) keep flowing
// through the same operations with its lower orders still exact.

#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Core>

#include "curvelab/errors.hpp"

namespace curvelab {

inline constexpr int kJetOrder = 4;
inline constexpr double kJetDivisionGuard = 1e-300;

template <typename Scalar>
class Jet {
 public:
  static constexpr int kSize = kJetOrder + 1;

  Jet() : c_{} {}
  // Implicit on purpose: constants mix freely into jet expressions.
  Jet(Scalar constant) : c_{} { c_[0] = constant; }  // NOLINT

  /// The identity function expanded at t: (t, 1, 0, 0, 0).
  static Jet variable(Scalar t) {
    Jet j(t);
    j.c_[1] = Scalar(1);
    return j;
  }

  static Jet from_coefficients(const std::array<Scalar, kSize>& c) {
    Jet j;
    j.c_ = c;
    return j;
  }

  Scalar& operator[](int k) { return c_[k]; }
  const Scalar& operator[](int k) const { return c_[k]; }

  Scalar value() const { return c_[0]; }

  /// k-th derivative f^(k)(t) = k! c_k.
  Scalar derivative(int k) const {
    Scalar f(1);
    for (int i = 2; i <= k; ++i) f *= Scalar(i);
    return c_[k] * f;
  }

  const std::array<Scalar, kSize>& coefficients() const { return c_; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator-(const Jet& a) {
    Jet r;
    for (int k = 0; k < kSize; ++k) r.c_[k] = -a.c_[k];
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < kSize; ++k) {
      Scalar acc(0);
      for (int j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    using std::abs;
    if (!(abs(b.c_[0]) > Scalar(kJetDivisionGuard))) {
      throw Error(ErrorKind::DivisionNearZero, "jet divisor has vanishing constant term");
    }
    Jet q;
    for (int k = 0; k < kSize; ++k) {
      Scalar acc = a.c_[k];
      for (int j = 1; j <= k; ++j) acc -= b.c_[j] * q.c_[k - j];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

 private:
  std::array<Scalar, kSize> c_;
};

template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, Scalar s) {
  Jet<Scalar> r;
  for (int k = 0; k < Jet<Scalar>::kSize; ++k) r[k] = a[k] * s;
  return r;
}
template <typename Scalar>
Jet<Scalar> operator*(Scalar s, const Jet<Scalar>& a) {
  return a * s;
}
template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, Scalar s) {
  return a / Jet<Scalar>(s);
}
template <typename Scalar>
Jet<Scalar> operator/(Scalar s, const Jet<Scalar>& a) {
  return Jet<Scalar>(s) / a;
}
template <typename Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, Scalar s) {
  Jet<Scalar> r = a;
  r[0] += s;
  return r;
}
template <typename Scalar>
Jet<Scalar> operator+(Scalar s, const Jet<Scalar>& a) {
  return a + s;
}
template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, Scalar s) {
  return a + (-s);
}
template <typename Scalar>
Jet<Scalar> operator-(Scalar s, const Jet<Scalar>& a) {
  return (-a) + s;
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Jet<Scalar>& j) {
  os << '(';
  for (int k = 0; k < Jet<Scalar>::kSize; ++k) os << (k ? ", " : "") << j[k];
  return os << ')';
}

namespace detail {

// Joint recurrence for (u, w) with u' = w f' and w' = sign * u f'. sign = -1
// gives (sin, cos), sign = +1 gives (sinh, cosh).
template <typename Scalar>
void paired_recurrence(const Jet<Scalar>& f, Scalar u0, Scalar w0, Scalar sign, Jet<Scalar>& u,
                       Jet<Scalar>& w) {
  u = Jet<Scalar>(u0);
  w = Jet<Scalar>(w0);
  for (int k = 1; k < Jet<Scalar>::kSize; ++k) {
    Scalar su(0), sw(0);
    for (int j = 1; j <= k; ++j) {
      su += Scalar(j) * f[j] * w[k - j];
      sw += Scalar(j) * f[j] * u[k - j];
    }
    u[k] = su / Scalar(k);
    w[k] = sign * sw / Scalar(k);
  }
}

}  // namespace detail

template <typename Scalar>
Jet<Scalar> sin(const Jet<Scalar>& f) {
  using std::cos;
  using std::sin;
  Jet<Scalar> s, c;
  detail::paired_recurrence(f, sin(f[0]), cos(f[0]), Scalar(-1), s, c);
  return s;
}

template <typename Scalar>
Jet<Scalar> cos(const Jet<Scalar>& f) {
  using std::cos;
  using std::sin;
  Jet<Scalar> s, c;
  detail::paired_recurrence(f, sin(f[0]), cos(f[0]), Scalar(-1), s, c);
  return c;
}

template <typename Scalar>
Jet<Scalar> sinh(const Jet<Scalar>& f) {
  using std::cosh;
  using std::sinh;
  Jet<Scalar> s, c;
  detail::paired_recurrence(f, sinh(f[0]), cosh(f[0]), Scalar(1), s, c);
  return s;
}

template <typename Scalar>
Jet<Scalar> cosh(const Jet<Scalar>& f) {
  using std::cosh;
  using std::sinh;
  Jet<Scalar> s, c;
  detail::paired_recurrence(f, sinh(f[0]), cosh(f[0]), Scalar(1), s, c);
  return c;
}

template <typename Scalar>
Jet<Scalar> exp(const Jet<Scalar>& f) {
  using std::exp;
  Jet<Scalar> e(exp(f[0]));
  for (int k = 1; k < Jet<Scalar>::kSize; ++k) {
    Scalar acc(0);
    for (int j = 1; j <= k; ++j) acc += Scalar(j) * f[j] * e[k - j];
    e[k] = acc / Scalar(k);
  }
  return e;
}

template <typename Scalar>
Jet<Scalar> sqrt(const Jet<Scalar>& f) {
  using std::sqrt;
  if (!(f[0] > Scalar(0))) {
    throw Error(ErrorKind::SqrtNonPositive, "jet square root of a non-positive value");
  }
  Jet<Scalar> r(sqrt(f[0]));
  for (int k = 1; k < Jet<Scalar>::kSize; ++k) {
    Scalar acc = f[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (Scalar(2) * r[0]);
  }
  return r;
}

/// Integer power by repeated squaring; negative exponents divide.
template <typename Scalar>
Jet<Scalar> powi(const Jet<Scalar>& f, int n) {
  if (n < 0) return Jet<Scalar>(Scalar(1)) / powi(f, -n);
  Jet<Scalar> result(Scalar(1));
  Jet<Scalar> base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// d/dt of the series. The top coefficient of the result is unknown and set
/// to zero; lower coefficients are exact.
template <typename Scalar>
Jet<Scalar> differentiate(const Jet<Scalar>& f) {
  Jet<Scalar> d;
  for (int k = 0; k + 1 < Jet<Scalar>::kSize; ++k) d[k] = Scalar(k + 1) * f[k + 1];
  return d;
}

/// Antiderivative with zero constant term; the order-4 input coefficient is
/// dropped.
template <typename Scalar>
Jet<Scalar> integrate(const Jet<Scalar>& f) {
  Jet<Scalar> r;
  for (int k = 1; k < Jet<Scalar>::kSize; ++k) r[k] = f[k - 1] / Scalar(k);
  return r;
}

/// outer(t0 + inner(sigma) - inner[0]) as a series in sigma, i.e. the jet of
/// a composite whose inner function passes through the outer expansion point.
template <typename Scalar>
Jet<Scalar> compose(const Jet<Scalar>& outer, const Jet<Scalar>& inner) {
  Jet<Scalar> delta = inner;
  delta[0] = Scalar(0);
  Jet<Scalar> r(outer[Jet<Scalar>::kSize - 1]);
  for (int k = Jet<Scalar>::kSize - 2; k >= 0; --k) r = r * delta + outer[k];
  return r;
}

/// Series reversion: given s(delta) with s[0] ignored and s[1] != 0, returns
/// delta(sigma) with s(delta(sigma)) - s[0] = sigma through order 4.
template <typename Scalar>
Jet<Scalar> revert(const Jet<Scalar>& s) {
  Jet<Scalar> shifted = s;
  shifted[0] = Scalar(0);
  const Jet<Scalar> sigma = Jet<Scalar>::variable(Scalar(0));
  Jet<Scalar> d = sigma / Jet<Scalar>(shifted[1]);
  // Each pass of this chord iteration fixes one more order.
  for (int pass = 0; pass < kJetOrder; ++pass) {
    Jet<Scalar> err = compose(shifted, d) - sigma;
    d = d - err / Jet<Scalar>(shifted[1]);
  }
  return d;
}

}  // namespace curvelab

namespace Eigen {

template <typename T>
struct NumTraits<curvelab::Jet<T>> : GenericNumTraits<curvelab::Jet<T>> {
  using Real = curvelab::Jet<T>;
  using NonInteger = curvelab::Jet<T>;
  using Nested = curvelab::Jet<T>;
  using Literal = curvelab::Jet<T>;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = curvelab::Jet<T>::kSize,
    AddCost = curvelab::Jet<T>::kSize,
    MulCost = curvelab::Jet<T>::kSize * curvelab::Jet<T>::kSize,
  };

  static inline Real epsilon() { return Real(std::numeric_limits<T>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
  static inline Real highest() { return Real(std::numeric_limits<T>::max()); }
  static inline Real lowest() { return Real(std::numeric_limits<T>::lowest()); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<curvelab::Jet<T>, T, BinaryOp> {
  using ReturnType = curvelab::Jet<T>;
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<T, curvelab::Jet<T>, BinaryOp> {
  using ReturnType = curvelab::Jet<T>;
};

}  // namespace Eigen
