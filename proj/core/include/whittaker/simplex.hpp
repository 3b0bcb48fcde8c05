#pragma once

#include <vector>

#include "whittaker/exact.hpp"

namespace whittaker {

struct CenteredPoint {
  std::vector<Rational> point;
  Rational slack;  // min over rows of min(a.y + b, upper - a.y - b)
};

// Maximizes the smallest slack of slack <= a_r.y + b_r <= upper - slack over free y.
// Exact simplex with Bland's rule, so the result depends only on the row order.
CenteredPoint centered_feasible_point(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                      const Rational& upper);

}  // namespace whittaker
