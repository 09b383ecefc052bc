#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace oddclif {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact field element a + b*sqrt(d). d == 0 means plain rational (b must be 0).
/// Values from different extensions never mix; d is unified on the fly and a
/// mismatch throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : a_(v) {}                // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : a_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational a, Rational b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
  }

  const Rational& rat() const { return a_; }
  const Rational& ext() const { return b_; }
  long long extd() const { return d_; }

  bool isZero() const { return a_ == 0 && b_ == 0; }
  bool isRational() const { return b_ == 0; }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    long long d = unify(x, y);
    return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    long long d = unify(x, y);
    return Scalar(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    long long d = unify(x, y);
    return Scalar(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
  Scalar operator-() const { return Scalar(-a_, -b_, d_); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  Scalar inverse() const {
    if (isZero()) throw ScalarError("division by zero");
    if (b_ == 0) return Scalar(Rational(1) / a_);
    Rational norm = a_ * a_ - Rational(d_) * b_ * b_;
    if (norm == 0) throw ScalarError("non-invertible extension element (d is a square?)");
    return Scalar(a_ / norm, -b_ / norm, d_);
  }

  std::string str() const;
  static Scalar parse(const std::string& s);

  /// sqrt of a rational value within Q(sqrt(d)); nullopt if unavailable.
  static std::optional<Scalar> sqrtInField(const Scalar& v, long long d);

 private:
  void normalize() {
    if (b_ == 0) d_ = 0;
    if (b_ != 0 && d_ == 0) throw ScalarError("extension part without extension");
  }
  static long long unify(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    throw ScalarError("mixing scalars from different quadratic extensions");
  }

  Rational a_{0};
  Rational b_{0};
  long long d_{0};
};

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> rationalSqrt(const Rational& v);

}  // namespace oddclif
