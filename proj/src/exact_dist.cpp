#include "tte/exact_dist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <string>

#include "tte/error.hpp"
#include "tte/specfun.hpp"

namespace tte {
namespace {

using LogFactorials = std::array<long double, ExactDist::kMaxSampleSize + 1>;

LogFactorials const& log_factorials()
{
    static LogFactorials const table = [] {
        LogFactorials t{};
        t[0] = 0;
        for (std::size_t i = 1; i < t.size(); ++i)
            t[i] = t[i - 1] + std::log(static_cast<long double>(i));
        return t;
    }();
    return table;
}

long double log_binomial(int n, int k)
{
    auto const& lf = log_factorials();
    return lf[n] - lf[k] - lf[n - k];
}

// Neumaier's variant of Kahan summation.
class CompensatedSum
{
  public:
    void add(long double v)
    {
        long double const t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + carry_; }

  private:
    long double sum_ = 0;
    long double carry_ = 0;
};

constexpr double kSentinelBand = 1e-9;

}  // namespace

ExactDist::ExactDist(int n, double truncation_time, double lambda)
    : n_(n), truncation_time_(truncation_time), lambda_(lambda)
{
    if (n < 1)
        throw DomainError("ExactDist requires n >= 1");
    if (n > kMaxSampleSize)
    {
        throw DomainError("ExactDist: n = " + std::to_string(n)
                          + " exceeds the supported maximum of "
                          + std::to_string(kMaxSampleSize)
                          + "; the alternating sum is not reliable there");
    }
    if (!(truncation_time > 0) || !std::isfinite(truncation_time))
        throw DomainError("ExactDist requires a finite T > 0");
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw DomainError("ExactDist requires a finite lambda > 0");

    long double const rate_time
        = static_cast<long double>(lambda) * truncation_time;
    terms_.reserve(static_cast<std::size_t>(n) * (n + 3) / 2);
    for (int d = 1; d <= n; ++d)
    {
        long double const log_nd = log_binomial(n, d);
        for (int k = 0; k <= d; ++k)
        {
            int const survivors = n - d + k;
            long double const log_mag = log_nd + log_binomial(d, k)
                                        - rate_time * survivors;
            long double const mag = std::exp(log_mag);
            terms_.push_back(Term{
                d,
                (k % 2 == 0) ? mag : -mag,
                static_cast<long double>(survivors) * truncation_time / d});
        }
    }
}

double ExactDist::point_mass_at_zero() const
{
    return std::exp(-n_ * lambda_ * truncation_time_);
}

double ExactDist::support_lower() const
{
    return 1.0 / (n_ * truncation_time_);
}

long double ExactDist::continuous_sum(double x) const
{
    long double const inv_x = 1.0L / x;
    CompensatedSum sum;
    for (auto const& term : terms_)
    {
        long double q = 1;
        if (term.offset < inv_x)
        {
            long double const threshold
                = static_cast<long double>(lambda_) * term.shape
                  * (inv_x - term.offset);
            q = specfun::reg_upper_gamma_ext(term.shape, threshold);
        }
        sum.add(term.coeff * q);
    }
    return sum.value();
}

double ExactDist::cdf_unclamped(double x) const
{
    if (!(x >= 0))
        throw DomainError("cdf requires x >= 0");
    long double const atom = std::exp(-static_cast<long double>(n_) * lambda_
                                      * truncation_time_);
    if (x == 0)
        return static_cast<double>(atom);
    return static_cast<double>(atom + continuous_sum(x));
}

double ExactDist::cdf(double x) const
{
    double const raw = cdf_unclamped(x);
    if (raw < -kSentinelBand || raw > 1 + kSentinelBand)
    {
        std::cerr << "warning: exact cdf sum left [0, 1] before clamping (n="
                  << n_ << ", T=" << truncation_time_ << ", lambda=" << lambda_
                  << ", x=" << x << ", value=" << raw << ")\n";
    }
    return std::clamp(raw, 0.0, 1.0);
}

double ExactDist::pdf(double x) const
{
    if (!(x >= support_lower()) || std::isinf(x))
        return 0.0;
    long double const inv_x = 1.0L / x;
    CompensatedSum sum;
    for (auto const& term : terms_)
    {
        long double const rate
            = static_cast<long double>(lambda_) * term.shape;
        sum.add(term.coeff
                * specfun::gamma_density_ext(inv_x - term.offset, rate, term.shape));
    }
    long double const density = sum.value() * inv_x * inv_x;
    return density > 0 ? static_cast<double>(density) : 0.0;
}

double ExactDist::conditional_cdf(double x) const
{
    if (!(x > 0))
        throw DomainError("conditional_cdf requires x > 0");
    double const positive_mass = -std::expm1(-n_ * lambda_ * truncation_time_);
    if (!(positive_mass > 1e-15))
    {
        throw NumericError("conditional_cdf: P(D > 0) = "
                           + std::to_string(positive_mass)
                           + " is too small to condition on");
    }
    long double const value = continuous_sum(x) / positive_mass;
    return static_cast<double>(std::clamp(value, 0.0L, 1.0L));
}

double conditional_cdf_small_rate_limit(int n, double truncation_time, double x)
{
    if (n < 1 || !(truncation_time > 0) || !(x > 0))
        throw DomainError("conditional_cdf_small_rate_limit: invalid arguments");
    return std::clamp(n - 1.0 / (x * truncation_time), 0.0, 1.0);
}

}  // namespace tte
