#include "zsg/scalar_opt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace zsg {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

void validate_opt_inputs(const Interval& box, double tol, int grid_cells) {
  if (!(box.lo < box.hi)) {
    throw construction_error("optimization interval must satisfy lo < hi");
  }
  if (!(tol > 0.0)) {
    throw construction_error("optimization tolerance must be positive");
  }
  if (grid_cells < 2) {
    throw construction_error("grid must have at least 2 cells");
  }
}

struct Best {
  double arg;
  double value;

  // Strict improvement, or the same value at a smaller arg.
  void offer(double x, double v) {
    if (v > value || (v == value && x < arg)) {
      arg = x;
      value = v;
    }
  }
};

}  // namespace

OptResult argmax_interval(const Objective1D& f, const Interval& box,
                          double tol, int grid_cells) {
  validate_opt_inputs(box, tol, grid_cells);
  long evaluations = 0;
  auto eval = [&](double x) {
    double v = f(x);
    ++evaluations;
    if (!std::isfinite(v)) {
      throw numeric_error("objective returned a non-finite value at x = " +
                          std::to_string(x));
    }
    return v;
  };

  // Coarse scan. Increasing x order makes the strict comparison in
  // Best::offer break ties toward the smallest arg.
  const double h = box.width() / grid_cells;
  Best best{box.lo, eval(box.lo)};
  int best_index = 0;
  for (int i = 1; i <= grid_cells; ++i) {
    double x = (i == grid_cells) ? box.hi : box.lo + i * h;
    double v = eval(x);
    if (v > best.value) best_index = i;
    best.offer(x, v);
  }

  // Golden-section refinement on the bracket around the best grid point.
  double a = box.lo + std::max(best_index - 1, 0) * h;
  double b = (best_index + 1 >= grid_cells) ? box.hi
                                            : box.lo + (best_index + 1) * h;
  if (b - a > tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    best.offer(c, fc);
    best.offer(d, fd);
    while (b - a > tol) {
      if (fc >= fd) {  // >= nudges ties toward the left half
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = eval(c);
        best.offer(c, fc);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = eval(d);
        best.offer(d, fd);
      }
    }
  }
  return {best.arg, best.value, evaluations};
}

OptResult argmin_interval(const Objective1D& f, const Interval& box,
                          double tol, int grid_cells) {
  OptResult r = argmax_interval([&](double x) { return -f(x); }, box, tol,
                                grid_cells);
  return {r.arg, -r.value, r.evaluations};
}

OptResult maximin(const Objective2D& f, const Interval& X, const Interval& Y,
                  double tol, int grid_cells) {
  long inner_evaluations = 0;
  auto worst_case = [&](double x) {
    OptResult inner = argmin_interval([&](double y) { return f(x, y); }, Y,
                                      tol / 10.0, grid_cells);
    inner_evaluations += inner.evaluations;
    return inner.value;
  };
  OptResult outer = argmax_interval(worst_case, X, tol, grid_cells);
  return {outer.arg, outer.value, inner_evaluations};
}

OptResult minimax(const Objective2D& f, const Interval& X, const Interval& Y,
                  double tol, int grid_cells) {
  long inner_evaluations = 0;
  auto best_case = [&](double y) {
    OptResult inner = argmax_interval([&](double x) { return f(x, y); }, X,
                                      tol / 10.0, grid_cells);
    inner_evaluations += inner.evaluations;
    return inner.value;
  };
  OptResult outer = argmin_interval(best_case, Y, tol, grid_cells);
  return {outer.arg, outer.value, inner_evaluations};
}

SaddleResult saddle_check(const Objective2D& f, const Interval& X,
                          const Interval& Y, double tol, double coincidence_tol,
                          int grid_cells) {
  OptResult lower = maximin(f, X, Y, tol, grid_cells);
  OptResult upper = minimax(f, X, Y, tol, grid_cells);
  OptResult inner =
      argmin_interval([&](double y) { return f(lower.arg, y); }, Y, tol / 10.0,
                      grid_cells);

  SaddleResult r;
  r.maximin_value = lower.value;
  r.maximin_arg = lower.arg;
  r.minimax_value = upper.value;
  r.minimax_arg = upper.arg;
  r.inner_min_at_maximin = inner.arg;
  r.gap = upper.value - lower.value;
  r.coincident =
      X == Y && std::abs(lower.arg - upper.arg) <= coincidence_tol;
  r.evaluations = lower.evaluations + upper.evaluations + inner.evaluations;
  return r;
}

ShapeDiagnostic quasiconcavity_diagnostic(const Objective2D& f,
                                          const Interval& X, const Interval& Y,
                                          int samples, std::uint64_t seed,
                                          int grid_cells) {
  if (samples < 1) {
    throw construction_error("diagnostic needs at least one sample");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(X.lo, X.hi);
  std::uniform_real_distribution<double> uy(Y.lo, Y.hi);

  ShapeDiagnostic diag;
  diag.samples = samples;
  std::vector<double> grid(static_cast<std::size_t>(grid_cells) + 1);
  std::vector<double> values(grid.size());

  auto scan = [&](const Interval& axis, auto&& line, bool in_x, double fixed) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = axis.lo + (axis.hi - axis.lo) * static_cast<double>(i) /
                              grid_cells;
      values[i] = line(grid[i]);
    }
    for (std::size_t j = 1; j + 1 < values.size(); ++j) {
      // Interior dip violates quasi-concavity; a bump violates
      // quasi-convexity. The caller flips the sign of `line` for the
      // latter so a dip is always what we look for.
      if (values[j] < values[j - 1] && values[j] < values[j + 1]) {
        ShapeWitness w;
        w.in_x = in_x;
        w.fixed = fixed;
        w.a = grid[j - 1];
        w.b = grid[j];
        w.c = grid[j + 1];
        w.fa = in_x ? values[j - 1] : -values[j - 1];
        w.fb = in_x ? values[j] : -values[j];
        w.fc = in_x ? values[j + 1] : -values[j + 1];
        diag.witnesses.push_back(w);
        return true;
      }
    }
    return false;
  };

  for (int s = 0; s < samples; ++s) {
    double y = uy(rng);
    if (scan(X, [&](double x) { return f(x, y); }, true, y)) {
      ++diag.x_violations;
    }
    double x = ux(rng);
    // Negate so an interior local maximum shows up as a dip.
    if (scan(Y, [&](double yy) { return -f(x, yy); }, false, x)) {
      ++diag.y_violations;
    }
  }
  return diag;
}

}  // namespace zsg
