#pragma once

#include <span>
#include <vector>

namespace robinlab::interp {

/// Fritsch-Carlson monotone slopes for samples on an increasing grid.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

/// Cubic Hermite interpolation from values and slopes. x must be increasing
/// and x0 inside [x.front(), x.back()].
double hermite(std::span<const double> x, std::span<const double> y, std::span<const double> dy, double x0);

/// Derivative of the same cubic Hermite interpolant.
double hermite_derivative(std::span<const double> x, std::span<const double> y, std::span<const double> dy,
                          double x0);

}  // namespace robinlab::interp
