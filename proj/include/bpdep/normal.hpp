#pragma once

namespace bpdep {

double normal_pdf(double z);

/// Standard normal CDF via erfc; absolute error below 1e-15 over the real line.
double normal_cdf(double z);

/// Inverse of normal_cdf on (0,1). Rational initial guess refined with one
/// Halley step against normal_cdf.
double normal_quantile(double p);

/// Antiderivative of the standard normal CDF: t*Phi(t) + phi(t).
double normal_cdf_integral(double t);

/// Gaussian kernel with bandwidth h evaluated at offset u.
double gaussian_kernel(double u, double h);

}  // namespace bpdep
