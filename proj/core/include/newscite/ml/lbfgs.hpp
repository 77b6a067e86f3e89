// lbfgs.hpp
// L-BFGS minimizer, history 10, strong-Wolfe line search.

#pragma once

#include <functional>
#include <vector>

namespace newscite::ml {

struct LbfgsParams {
  int history = 10;
  int max_iterations = 200;
  double gradient_tolerance = 1e-5;  // stop when ||g||_2 < this
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_line_search = 40;
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// objective(x, grad_out) -> f(x); grad_out is resized by the caller.
LbfgsResult lbfgs_minimize(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& objective,
    std::vector<double> x0, const LbfgsParams& params = {});

}  // namespace newscite::ml
