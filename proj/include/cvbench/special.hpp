#pragma once

#include <cstddef>

namespace cvbench {

// Standard normal density and CDF. The CDF goes through erfc, giving
// absolute error well under 1e-12 across the real line.
double normal_pdf(double z);
double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double incomplete_beta(double x, double a, double b);

// F distribution CDF with d1, d2 degrees of freedom.
double f_cdf(double x, double d1, double d2);

// Student t CDF with nu degrees of freedom.
double t_cdf(double x, double nu);

// CDF of the range of k independent standard normals.
double normal_range_cdf(double r, std::size_t k);

// CDF of the studentized range Q = range(k normals) / s, with s the square
// root of an independent chi-square over nu. Outer chi integral by
// panel-doubled Gauss-Legendre; absolute error <= 1e-6.
double studentized_range_cdf(double q, std::size_t k, double nu);

}  // namespace cvbench
