#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zsg/expr.hpp"
#include "zsg/oligopoly.hpp"
#include "zsg/quadratic.hpp"

namespace zsg {

// Deterministic rejection sampler for oligopoly parameter draws used by
// batch verification. Every returned instance passes validate(), keeps
// 0 < b <= 0.9, both costs strictly inside (0, a), and leaves the
// closed-form outputs strictly inside the default [0, a] strategy box.
std::vector<OligopolyParams> sample_oligopoly_params(int count,
                                                     std::uint64_t seed);

// Interior two-player quadratic saddle in expanded form
//   f(x, y) = -axx*x^2 + byy*y^2 + cxy*x*y + px*x + qy*y
// with axx, byy > 0 and cxy^2 < 4*axx*byy. The stationary point solves
//   [-2*axx   cxy ] [x]   [-px]
//   [  cxy  2*byy ] [y] = [-qy]
// and is kept strictly inside `box` by the sampler.
struct QuadraticSlice {
  double axx = 1.0;
  double byy = 1.0;
  double cxy = 0.0;
  double px = 0.0;
  double qy = 0.0;
  Interval box{-3.0, 3.0};

  double operator()(double x, double y) const {
    return -axx * x * x + byy * y * y + cxy * x * y + px * x + qy * y;
  }
  // Solves the first-order conditions by Cramer's rule.
  SymmetricPoint stationary_point() const;
};

std::vector<QuadraticSlice> sample_quadratic_slices(int count,
                                                    std::uint64_t seed);

// Random expression tree over the declared variables, used by the
// parse/print round-trip checks. Literals are nonnegative (a leading
// minus is a Negate node), matching what the parser itself produces.
Expr sample_expression(std::mt19937_64& rng, const GroupSpec& groups,
                       int max_depth);

}  // namespace zsg
