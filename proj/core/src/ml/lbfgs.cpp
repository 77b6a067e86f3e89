#include "newscite/ml/lbfgs.hpp"

#include <cmath>
#include <deque>

namespace newscite::ml {

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
}  // namespace

LbfgsResult lbfgs_minimize(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& objective,
    std::vector<double> x0, const LbfgsParams& params) {
  std::size_t n = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);

  std::vector<double> grad(n, 0.0);
  double f = objective(result.x, grad);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  std::vector<double> direction(n), x_new(n), grad_new(n);

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double gnorm = norm2(grad);
    if (gnorm < params.gradient_tolerance) {
      result.converged = true;
      result.iterations = iter;
      break;
    }

    // two-loop recursion
    direction = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], direction);
      for (std::size_t j = 0; j < n; ++j) direction[j] -= alpha[i] * y_hist[i][j];
    }
    if (!s_hist.empty()) {
      double scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (auto& d : direction) d *= scale;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      double beta = rho_hist[i] * dot(y_hist[i], direction);
      for (std::size_t j = 0; j < n; ++j) direction[j] += (alpha[i] - beta) * s_hist[i][j];
    }
    for (auto& d : direction) d = -d;

    double dg = dot(direction, grad);
    if (dg >= 0) {  // not a descent direction; fall back to steepest descent
      for (std::size_t j = 0; j < n; ++j) direction[j] = -grad[j];
      dg = -dot(grad, grad);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    // strong-Wolfe line search by backtracking/extension
    double step = 1.0;
    double f_new = f;
    bool ok = false;
    double lo = 0.0, hi = 0.0;
    bool have_hi = false;
    for (int ls = 0; ls < params.max_line_search; ++ls) {
      for (std::size_t j = 0; j < n; ++j) x_new[j] = result.x[j] + step * direction[j];
      f_new = objective(x_new, grad_new);
      bool armijo = f_new <= f + params.wolfe_c1 * step * dg;
      double dg_new = dot(direction, grad_new);
      bool curvature = std::fabs(dg_new) <= params.wolfe_c2 * std::fabs(dg);
      if (armijo && curvature) {
        ok = true;
        break;
      }
      if (!armijo || !std::isfinite(f_new)) {
        hi = step;
        have_hi = true;
        step = 0.5 * (lo + hi);
      } else {
        lo = step;
        step = have_hi ? 0.5 * (lo + hi) : step * 2.0;
      }
      if (step < 1e-20) break;
    }
    if (!ok && !(std::isfinite(f_new) && f_new < f)) {
      result.iterations = iter;
      break;  // line search failed; keep current point
    }

    std::vector<double> s(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = x_new[j] - result.x[j];
      y[j] = grad_new[j] - grad[j];
    }
    double sy = dot(s, y);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > params.history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    result.x = x_new;
    grad = grad_new;
    f = f_new;
    result.iterations = iter + 1;
  }

  result.value = f;
  result.gradient_norm = norm2(grad);
  if (result.gradient_norm < params.gradient_tolerance) result.converged = true;
  return result;
}

}  // namespace newscite::ml
