#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hustab/domain.hpp"
#include "hustab/function_spec.hpp"
#include "hustab/infomeasure.hpp"

namespace hustab {

/// a x^alpha + b (1-x)^alpha - b. Throws std::invalid_argument for alpha = 0
/// (use make_exact_log).
FunctionSpec make_exact_power(double a, double b, const Alpha& alpha);

/// lambda ln(1-x) + c.
FunctionSpec make_exact_log(double lambda, double c);

/// base + noise(x) with |noise| <= plan.bound.
FunctionSpec perturb(const FunctionSpec& spec, const PerturbationPlan& plan);

/// I_n = J_n for n = 2..max_n.
MeasureFamily make_canonical_family(const FamilyParams& params, const Alpha& alpha, int max_n);

/// I_n + delta_n * u(seed, n, p) with u in [-1, 1]; deltas[0] belongs to n = 2.
/// Throws std::invalid_argument when deltas has fewer than max_n - 1 entries
/// or a negative entry.
MeasureFamily perturb_family(const MeasureFamily& family, std::span<const double> deltas, std::uint64_t seed);

/// Triangle-inequality upper bounds eps_1..eps_(max_n-1) for a solution family
/// perturbed by perturb_family, valid on vectors with every component >= margin:
/// eps_1 = 2 delta_3, eps_(n-1) = delta_n + delta_(n-1) + (2 margin)^alpha delta_2.
std::vector<double> perturbed_family_epsilons(const Alpha& alpha, std::span<const double> deltas,
                                              int max_n, double margin);

/// Defect at every grid point, in the order of grid.points().
struct DefectField {
  double margin = 0.0;
  int resolution = 0;
  std::vector<double> values;
};

/// Independent quad-precision evaluation of the defect; shares no evaluation
/// code with the equation module.
DefectField oracle_defect_scan(const FunctionSpec& spec, const Alpha& alpha, const DomainGrid& grid);

/// The same transcription at a single point of the open triangle.
double oracle_defect(const FunctionSpec& spec, const Alpha& alpha, double x, double y);

}  // namespace hustab
