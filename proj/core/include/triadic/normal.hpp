#pragma once

namespace triadic {

/// Standard normal CDF, via erfc so both tails keep relative precision.
double std_normal_cdf(double z);

/// 1 - Phi(z) without cancellation.
double std_normal_upper(double z);

/// Inverse of the standard normal CDF for 0 < p < 1. Throws DomainError otherwise.
double std_normal_quantile(double p);

/// Upper critical value c_a with P(Z > c_a) = a.
double normal_critical_value(double a);

} // namespace triadic
