#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "whittaker/mellin.hpp"

namespace whittaker {

struct QuadResult {
  std::complex<double> value;
  double est_error = 0;
  long long evaluations = 0;
  std::chrono::duration<double> wall_time{};
  bool converged = false;
};

// Tensor grid base + i*k*step (MB) or base + k*step (cone), |k_j| <= half[j].
struct ContourSpec {
  std::vector<double> base_point;
  std::vector<double> truncation;  // T_j = half[j] * step[j]
  std::vector<double> step;
  std::vector<int> panels;  // 2*half+1 nodes per axis
};

struct BasePointOptions {
  Rational margin{1, 8};
  Rational upper{4};  // forms are kept inside (slack, upper - slack)
};

// Strictly feasible point for Re form > 0; throws Infeasible when the best slack is below the margin.
std::vector<Rational> contour_base_point(const ConstraintSet& constraints, int dimension,
                                         const BasePointOptions& options = {});
Rational min_slack(const ConstraintSet& constraints, const std::vector<Rational>& point);

double default_tolerance(int dimension);
// Hardware concurrency capped by WHITTAKER_THREADS.
int worker_threads();

struct MBOptions {
  double tol = 0;  // 0 selects default_tolerance
  std::optional<std::vector<Rational>> base_point;
  BasePointOptions contour;
  int max_dimension = 4;
  int max_refinements = 2;
  long long max_evaluations = 600'000'000;
  double truncation_safety = 2;
  bool throw_on_failure = true;
};

ContourSpec plan_contour(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
                         const MBOptions& options = {});
QuadResult eval_mb(const MBIntegrand& f, const std::vector<double>& x, const std::vector<double>& lambda,
                   const MBOptions& options = {});
// M(s): the inner integral of a Mellin split at fixed outer variables.
QuadResult eval_mellin(const MellinSplit& split, const std::vector<std::complex<double>>& s,
                       const std::vector<double>& lambda, const MBOptions& options = {});

struct ConeOptions {
  double tol = 0;
  int max_refinements = 3;
  long long max_evaluations = 600'000'000;
  int tensor_max_dimension = 4;
  std::uint64_t seed = 1;
  int qmc_points = 1 << 16;
  int qmc_shifts = 8;
  bool throw_on_failure = true;
};

QuadResult eval_cone(Family family, int n, const std::vector<double>& lambda, const std::vector<double>& x,
                     const ConeOptions& options = {});

// Reference quadratures (double-exponential rules).
double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol = 1e-14);
double integrate_half_line(const std::function<double(double)>& f, double tol = 1e-14);
double integrate_quadrant(const std::function<double(double, double)>& f, double tol = 1e-13);

}  // namespace whittaker
