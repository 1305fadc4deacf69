#pragma once

#include <numbers>

#include "arnold/blocks.hpp"

namespace arnold::detail {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline Expr C(double v) { return Expr(v); }
inline Expr coord(int i) { return Expr::coord(i); }

// X = d/dc2, alpha = v dc2, beta = dc2.
Patch fiber_patch(std::string name, ChartPtr chart, const Expr& v, const Expr& B, const Expr& rho);

// Fills trace, Bernoulli value and direction of every face and the block range.
void finalize(BlockRealization& b);

double wrap_angle(double a, double period = kTwoPi);

}  // namespace arnold::detail
