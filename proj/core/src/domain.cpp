#include "hustab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace hustab {

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value)) throw std::invalid_argument("alpha must be finite");
  if (value > 0.0) throw std::invalid_argument("alpha must be <= 0, got " + std::to_string(value));
}

DomainGrid make_interior_grid(double margin, int resolution) {
  // For margin >= 1/3 the shrunk triangle is empty.
  if (!(margin > 0.0 && margin < 1.0 / 3.0)) {
    throw std::invalid_argument("margin out of range: need 0 < margin < 1/3, got " +
                                std::to_string(margin));
  }
  if (resolution < 2) {
    throw std::invalid_argument("resolution must be >= 2, got " + std::to_string(resolution));
  }

  DomainGrid grid;
  grid.margin_ = margin;
  grid.resolution_ = resolution;

  // Lattice index k = i - 1 in [0, m - 2] maps to margin + k * span / (m - 2).
  const int steps = resolution - 2;
  const double span = 1.0 - 3.0 * margin;
  grid.axis_.resize(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    grid.axis_[static_cast<std::size_t>(k)] =
        steps == 0 ? margin : margin + span * static_cast<double>(k) / static_cast<double>(steps);
  }

  grid.points_.reserve(static_cast<std::size_t>(resolution) * (resolution - 1) / 2);
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      grid.points_.push_back({grid.axis_[ui], grid.axis_[uj], ui, uj});
    }
  }
  return grid;
}

ProbabilityVector validate_prob_vector(std::span<const double> raw) {
  if (raw.size() < 2) throw std::invalid_argument("probability vector needs n >= 2 components");
  double sum = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (!std::isfinite(raw[k]) || !(raw[k] > 0.0)) {
      throw std::invalid_argument("probability component " + std::to_string(k) +
                                  " is not strictly positive (open simplex)");
    }
    sum += raw[k];
  }
  if (std::fabs(sum - 1.0) > kSimplexSumTolerance) {
    throw std::invalid_argument("probability vector sums to " + std::to_string(sum) + ", not 1");
  }
  ProbabilityVector p;
  p.p_.assign(raw.begin(), raw.end());
  return p;
}

std::vector<ProbabilityVector> simplex_sample(int n, int count, std::uint64_t seed, double margin) {
  if (n < 2) throw std::invalid_argument("simplex dimension n must be >= 2");
  if (count < 0) throw std::invalid_argument("sample count must be nonnegative");
  if (!(margin >= 0.0) || !(static_cast<double>(n) * margin < 1.0)) {
    throw std::invalid_argument("infeasible margin: n * margin must be < 1");
  }

  // mt19937_64's output sequence is fixed by the standard; the conversion to
  // doubles below is spelled out so results do not depend on the library's
  // distribution implementations.
  std::mt19937_64 engine(seed);
  const double free_mass = 1.0 - static_cast<double>(n) * margin;

  std::vector<ProbabilityVector> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<double> e(static_cast<std::size_t>(n));
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (int s = 0; s < count; ++s) {
    // Normalized exponential spacings are uniform on the simplex.
    double total = 0.0;
    for (auto& v : e) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
      v = -std::log1p(-u);
      total += v;
    }
    if (total == 0.0) {
      std::fill(e.begin(), e.end(), 1.0);
      total = static_cast<double>(n);
    }
    // Last component absorbs rounding so the sum stays within tolerance.
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < raw.size(); ++k) {
      raw[k] = margin + free_mass * (e[k] / total);
      acc += raw[k];
    }
    raw.back() = std::max(margin, 1.0 - acc);
    out.push_back(validate_prob_vector(raw));
  }
  return out;
}

}  // namespace hustab
