#pragma once

#include <utility>
#include <vector>

namespace rydconv {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on the Legendre
// polynomial, converges to machine precision in a few iterations).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// same rule mapped to [a, b]
std::pair<std::vector<double>, std::vector<double>>
gauss_legendre(int n, double a, double b);

// trapezoid integral over an arbitrary sorted axis
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

} // namespace rydconv
