#pragma once

#include <vector>

namespace tte {

/// Exact sampling law of the estimator D/S for n items exponentially
/// distributed with rate lambda and truncated at time T.
///
/// The law has an atom e^(-n lambda T) at zero and a density on
/// [1/(nT), inf). Writing c = lambda T, the continuous part is the
/// alternating double sum over d = 1..n, k = 0..d of
///
///   (-1)^k C(n,d) C(d,k) e^(-c (n-d+k)) Q(d, lambda d (1/x - t_kd)_+)
///
/// with offsets t_kd = (n-d+k) T / d. Coefficients are tabulated once in
/// sign/log-magnitude form and sums are accumulated in extended precision
/// with compensation. Sizes above 50 are rejected.
class ExactDist
{
  public:
    static constexpr int kMaxSampleSize = 50;

    ExactDist(int n, double truncation_time, double lambda);

    int n() const { return n_; }
    double truncation_time() const { return truncation_time_; }
    double lambda() const { return lambda_; }

    /// P(estimate = 0) = e^(-n lambda T).
    double point_mass_at_zero() const;

    /// Lower end 1/(nT) of the continuous support.
    double support_lower() const;

    /// P(estimate <= x), clamped to [0, 1]. Throws DomainError for x < 0.
    double cdf(double x) const;

    /// The cdf sum before clamping; drifts outside [0, 1] only through
    /// rounding in the alternating sum.
    double cdf_unclamped(double x) const;

    /// Density of the continuous part; 0 below 1/(nT).
    double pdf(double x) const;

    /// P(estimate <= x | D > 0) for x > 0. Throws NumericError when the
    /// conditioning event has probability below 1e-15.
    double conditional_cdf(double x) const;

  private:
    struct Term
    {
        int shape;
        long double coeff;   // signed C_{k,d}
        long double offset;  // t_kd
    };

    long double continuous_sum(double x) const;

    int n_;
    double truncation_time_;
    double lambda_;
    std::vector<Term> terms_;
};

/// Limit of P(estimate <= x | D > 0) as lambda -> 0+.
///
/// The conditional law then concentrates on a single failure spread
/// uniformly over (0, T], giving clamp(n - 1/(x T), 0, 1). Because the
/// conditional cdf decreases in lambda this is its supremum, so a target
/// probability at or above it has no solution in lambda.
double conditional_cdf_small_rate_limit(int n, double truncation_time, double x);

}  // namespace tte
