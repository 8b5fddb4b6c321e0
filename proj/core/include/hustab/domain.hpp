#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hustab {

/// Nonpositive exponent of the parametric equation.
class Alpha {
 public:
  /// Throws std::invalid_argument for alpha > 0 or non-finite input.
  explicit Alpha(double value);

  double value() const { return value_; }
  bool is_zero() const { return value_ == 0.0; }
  bool is_negative() const { return value_ < 0.0; }

 private:
  double value_;
};

struct GridPoint {
  double x;
  double y;
  std::size_t i;  // index of x in DomainGrid::axis()
  std::size_t j;  // index of y in DomainGrid::axis()
};

/// Uniform lattice inside the shrunk triangle
/// { x >= margin, y >= margin, x + y <= 1 - margin }.
class DomainGrid {
 public:
  double margin() const { return margin_; }
  int resolution() const { return resolution_; }
  std::span<const GridPoint> points() const { return points_; }
  /// Distinct coordinate values, ascending. Every point has x, y in this set.
  std::span<const double> axis() const { return axis_; }
  std::size_t size() const { return points_.size(); }

 private:
  friend DomainGrid make_interior_grid(double margin, int resolution);
  double margin_ = 0.0;
  int resolution_ = 0;
  std::vector<double> axis_;
  std::vector<GridPoint> points_;
};

/// Lattice points (i/m, j/m) with i, j >= 1, i + j <= m, mapped affinely onto
/// the margin-shrunk triangle: m(m-1)/2 points.
/// Throws std::invalid_argument unless 0 < margin < 1/3 and resolution >= 2.
DomainGrid make_interior_grid(double margin, int resolution);

/// Point of the open simplex: all components > 0, summing to 1.
class ProbabilityVector {
 public:
  std::span<const double> values() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }

 private:
  friend ProbabilityVector validate_prob_vector(std::span<const double> raw);
  std::vector<double> p_;
};

inline constexpr double kSimplexSumTolerance = 1e-12;

/// Validates without renormalizing. Throws std::invalid_argument on
/// n < 2, a nonpositive or non-finite component, or |sum - 1| > 1e-12.
ProbabilityVector validate_prob_vector(std::span<const double> raw);

/// `count` points of the simplex with every component >= margin, drawn from
/// the uniform distribution on the shrunk simplex. Bit-for-bit reproducible
/// for a given seed. Throws std::invalid_argument if n < 2 or n * margin >= 1.
std::vector<ProbabilityVector> simplex_sample(int n, int count, std::uint64_t seed, double margin);

}  // namespace hustab
