#pragma once

// Special-function kernels: log-gamma, the regularized upper incomplete
// gamma function Q(a, z) = (1/Gamma(a)) * int_z^inf t^(a-1) e^(-t) dt, its
// inverse in z, and the gamma density in (rate, shape) form.
//
// Every function is pure and may be called concurrently.

namespace tte::specfun {

/// ln Gamma(a) for a > 0. Throws DomainError otherwise.
double log_gamma(double a);

/// Regularized upper incomplete gamma Q(a, z), a > 0, z >= 0.
///
/// Integer shapes up to 64 use the terminating Poisson sum; other shapes use
/// the lower series when z < a + 1 and a Lentz continued fraction otherwise.
/// Throws DomainError for a <= 0 or z < 0.
double reg_upper_gamma(double a, double z);

/// Extended-precision variant used where Q enters long alternating sums.
long double reg_upper_gamma_ext(long double a, long double z);

/// Returns z >= 0 with Q(a, z) = p, for a > 0 and p in (0, 1].
///
/// Safeguarded Newton iteration inside an expanding bracket; the result
/// satisfies |Q(a, z) - p| <= 1e-10.
double inv_reg_upper_gamma(double a, double p);

/// Gamma density (rate^shape / Gamma(shape)) x^(shape-1) e^(-rate x) for
/// x > 0, and 0 for x <= 0.
double gamma_density(double x, double rate, double shape);

long double gamma_density_ext(long double x, long double rate, long double shape);

}  // namespace tte::specfun
