#include "hustab/wide.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace hustab {
namespace {

// ln 2 split into two doubles.
constexpr Wide kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};

// 1/k! for k = 3..12, rounded to double-double on first use.
const std::array<Wide, 10>& inverse_factorials() {
  static const std::array<Wide, 10> table = [] {
    std::array<Wide, 10> t{};
    Wide fact = 2.0;
    for (int k = 3; k < 13; ++k) {
      fact = fact * static_cast<double>(k);
      t[k - 3] = Wide(1.0) / fact;
    }
    return t;
  }();
  return table;
}

}  // namespace

Wide abs(const Wide& x) { return x.hi() < 0.0 ? -x : x; }

Wide ldexp(const Wide& x, int e) { return {std::ldexp(x.hi(), e), std::ldexp(x.lo(), e)}; }

namespace {

// Squaring-based exp used once to build the lookup table.
Wide exp_by_squaring(const Wide& x) {
  // exp(x) = 2^m * (expm1(r) + 1)^512 with |r| <= ln2 / 1024.
  const double m = std::floor(x.hi() / kLn2.hi() + 0.5);
  const Wide r = ldexp(x - kLn2 * m, -9);
  const auto& inv_fact = inverse_factorials();
  const double tol = std::ldexp(std::numeric_limits<double>::epsilon(), -9 - 53);

  Wide p = r * r;
  Wide s = r + ldexp(p, -1);
  p = p * r;
  Wide t = p * inv_fact[0];
  std::size_t i = 0;
  do {
    s += t;
    p = p * r;
    ++i;
    t = p * inv_fact[i];
  } while (std::fabs(t.hi()) > tol && i + 1 < inv_fact.size());
  s += t;

  for (int k = 0; k < 9; ++k) s = ldexp(s, 1) + s * s;
  s = s + 1.0;
  return ldexp(s, static_cast<int>(m));
}

constexpr int kTableSteps = 2048;  // table spacing 1/2048
constexpr int kTableHalf = 720;    // covers |r| <= ln2/2 with slack

// exp(j / 2048) for j in [-kTableHalf, kTableHalf].
const std::array<Wide, 2 * kTableHalf + 1>& exp_table() {
  static const auto table = [] {
    std::array<Wide, 2 * kTableHalf + 1> t{};
    for (int j = -kTableHalf; j <= kTableHalf; ++j) {
      t[j + kTableHalf] = exp_by_squaring(Wide(static_cast<double>(j) / kTableSteps));
    }
    return t;
  }();
  return table;
}

}  // namespace

Wide exp(const Wide& x) {
  if (x.hi() <= -709.0) return 0.0;
  if (x.hi() >= 709.0) return std::numeric_limits<double>::infinity();
  if (x.hi() == 0.0 && x.lo() == 0.0) return 1.0;

  const double m = std::floor(x.hi() / kLn2.hi() + 0.5);
  const Wide r = x - kLn2 * m;
  const double j = std::nearbyint(r.hi() * kTableSteps);
  const Wide t = r - j / kTableSteps;  // |t| <= 1/4096

  // expm1(t) through the t^7 term; the truncation error is below 1e-31.
  const auto& inv_fact = inverse_factorials();
  Wide poly = inv_fact[4];  // 1/7!
  for (int k = 3; k >= 0; --k) poly = poly * t + inv_fact[k];
  poly = poly * t + Wide(0.5);
  poly = poly * t + 1.0;
  poly = poly * t;

  const Wide& base = exp_table()[static_cast<std::size_t>(static_cast<int>(j) + kTableHalf)];
  return ldexp(base + base * poly, static_cast<int>(m));
}

Wide log(const Wide& x) {
  if (x.hi() == 1.0 && x.lo() == 0.0) return 0.0;
  if (!(x.hi() > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  // One Newton step on exp(y) = x doubles the precision of std::log.
  Wide y = std::log(x.hi());
  y = y + x * exp(-y) - 1.0;
  return y;
}

Wide pow(const Wide& x, double alpha) {
  if (alpha == 0.0) return 1.0;
  if (x.hi() == 1.0 && x.lo() == 0.0) return 1.0;
  return exp(log(x) * alpha);
}

}  // namespace hustab
