#pragma once

#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace ckepler {

/// Forward-mode differentiation scalar carrying one derivative channel.
/// Nest as Dual<Dual<double>> for exact second derivatives.
template <class T>
struct Dual {
  T a{};  // value
  T b{};  // derivative

  Dual() = default;
  Dual(const T& value) : a(value) {}
  Dual(const T& value, const T& deriv) : a(value), b(deriv) {}

  template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
  Dual(U value) : a(static_cast<T>(value)) {}

  Dual operator-() const { return {-a, -b}; }

  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  Dual& operator*=(const Dual& o) { b = b * o.a + a * o.b; a *= o.a; return *this; }
  Dual& operator/=(const Dual& o) { b = (b * o.a - a * o.b) / (o.a * o.a); a /= o.a; return *this; }
};

template <class T> Dual<T> operator+(Dual<T> x, const Dual<T>& y) { return x += y; }
template <class T> Dual<T> operator-(Dual<T> x, const Dual<T>& y) { return x -= y; }
template <class T> Dual<T> operator*(Dual<T> x, const Dual<T>& y) { return x *= y; }
template <class T> Dual<T> operator/(Dual<T> x, const Dual<T>& y) { return x /= y; }

template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator+(Dual<T> x, U y) { return x += Dual<T>(y); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator+(U x, Dual<T> y) { return y += Dual<T>(x); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator-(Dual<T> x, U y) { return x -= Dual<T>(y); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator-(U x, const Dual<T>& y) { return Dual<T>(x) - y; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator*(Dual<T> x, U y) { return x *= Dual<T>(y); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator*(U x, Dual<T> y) { return y *= Dual<T>(x); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator/(Dual<T> x, U y) { return x /= Dual<T>(y); }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator/(U x, const Dual<T>& y) { return Dual<T>(x) / y; }

inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.a); }

template <class T> bool operator<(const Dual<T>& x, const Dual<T>& y) { return value_of(x) < value_of(y); }
template <class T> bool operator>(const Dual<T>& x, const Dual<T>& y) { return value_of(x) > value_of(y); }
template <class T> bool operator<=(const Dual<T>& x, const Dual<T>& y) { return value_of(x) <= value_of(y); }
template <class T> bool operator>=(const Dual<T>& x, const Dual<T>& y) { return value_of(x) >= value_of(y); }
template <class T> bool operator==(const Dual<T>& x, const Dual<T>& y) { return x.a == y.a && x.b == y.b; }
template <class T> bool operator!=(const Dual<T>& x, const Dual<T>& y) { return !(x == y); }

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}

template <class T>
Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

}  // namespace ckepler

namespace Eigen {

template <class T>
struct NumTraits<ckepler::Dual<T>> : NumTraits<T> {
  using Real = ckepler::Dual<T>;
  using NonInteger = ckepler::Dual<T>;
  using Nested = ckepler::Dual<T>;
  using Literal = typename NumTraits<T>::Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 4 * NumTraits<T>::MulCost
  };
  static inline Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
};

}  // namespace Eigen
