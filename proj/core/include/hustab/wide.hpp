#pragma once

// Double-double arithmetic (~106-bit significand). The defect of the
// functional equation cancels terms of size up to ~1e16 for strongly
// negative alpha near the triangle boundary, which is far beyond what a
// plain double can resolve.

#include <cmath>
#include <compare>
#include <limits>

namespace hustab {

class Wide {
 public:
  constexpr Wide() = default;
  constexpr Wide(double v) : hi_(v), lo_(0.0) {}  // NOLINT: implicit by design of the numeric type
  constexpr Wide(double hi, double lo) : hi_(hi), lo_(lo) {}

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  /// Nearest double (hi is already round-to-nearest of hi + lo).
  constexpr double to_double() const { return hi_; }
  explicit constexpr operator double() const { return hi_; }

  friend Wide operator-(const Wide& a) { return {-a.hi_, -a.lo_}; }

  friend Wide operator+(const Wide& a, const Wide& b) {
    const Pair s = two_sum(a.hi_, b.hi_);
    const Pair t = two_sum(a.lo_, b.lo_);
    const Pair u = fast_two_sum(s.first, s.second + t.first);
    const Pair v = fast_two_sum(u.first, u.second + t.second);
    return {v.first, v.second};
  }
  friend Wide operator+(const Wide& a, double b) {
    const Pair s = two_sum(a.hi_, b);
    const Pair v = fast_two_sum(s.first, s.second + a.lo_);
    return {v.first, v.second};
  }
  friend Wide operator+(double a, const Wide& b) { return b + a; }
  friend Wide operator-(const Wide& a, const Wide& b) { return a + (-b); }
  friend Wide operator-(const Wide& a, double b) { return a + (-b); }
  friend Wide operator-(double a, const Wide& b) { return (-b) + a; }

  friend Wide operator*(const Wide& a, const Wide& b) {
    const Pair p = two_prod(a.hi_, b.hi_);
    const Pair v = fast_two_sum(p.first, p.second + (a.hi_ * b.lo_ + a.lo_ * b.hi_));
    return {v.first, v.second};
  }
  friend Wide operator*(const Wide& a, double b) {
    const Pair p = two_prod(a.hi_, b);
    const Pair v = fast_two_sum(p.first, p.second + a.lo_ * b);
    return {v.first, v.second};
  }
  friend Wide operator*(double a, const Wide& b) { return b * a; }

  friend Wide operator/(const Wide& a, const Wide& b) {
    double q1 = a.hi_ / b.hi_;
    Wide r = a - b * q1;
    double q2 = r.hi_ / b.hi_;
    r = r - b * q2;
    double q3 = r.hi_ / b.hi_;
    const Pair q = fast_two_sum(q1, q2);
    return Wide(q.first, q.second) + q3;
  }
  friend Wide operator/(const Wide& a, double b) { return a / Wide(b); }
  friend Wide operator/(double a, const Wide& b) { return Wide(a) / b; }

  Wide& operator+=(const Wide& o) { return *this = *this + o; }
  Wide& operator-=(const Wide& o) { return *this = *this - o; }
  Wide& operator*=(const Wide& o) { return *this = *this * o; }
  Wide& operator/=(const Wide& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Wide& a, const Wide& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend constexpr std::partial_ordering operator<=>(const Wide& a, const Wide& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  struct Pair {
    double first, second;
  };
  static Pair two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
  }
  static Pair fast_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }
  static Pair two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

Wide abs(const Wide& x);
Wide ldexp(const Wide& x, int e);
Wide exp(const Wide& x);
/// Natural log; requires x > 0.
Wide log(const Wide& x);
/// x^alpha for x > 0. alpha == 0 returns exactly 1.
Wide pow(const Wide& x, double alpha);

}  // namespace hustab
