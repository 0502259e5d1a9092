#pragma once

// Standard normal distribution functions with tail-accurate variants.

namespace bsps::normal {

/// Density phi(z).
double pdf(double z);

/// Distribution function Phi(z).
double cdf(double z);

/// Upper tail 1 - Phi(z), evaluated without cancellation.
double sf(double z);

/// log(1 - Phi(z)); finite for every finite z.
double log_sf(double z);

/// log Phi(z).
inline double log_cdf(double z) { return log_sf(-z); }

/// Inverse of cdf on (0, 1).
double quantile(double u);

/// Inverse of sf on (0, 1): the z with 1 - Phi(z) = q. Accurate for tiny q.
double sf_inverse(double q);

}  // namespace bsps::normal
