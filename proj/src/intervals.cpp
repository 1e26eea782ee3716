#include "tte/intervals.hpp"

#include <cmath>
#include <string>

#include "tte/error.hpp"
#include "tte/exact_dist.hpp"

namespace tte {
namespace {

constexpr int kMaxBracketSteps = 60;
constexpr int kMaxBisections = 200;

void check_alpha(double alpha)
{
    if (!(alpha > 0) || !(alpha < 1))
    {
        throw DomainError("alpha must lie in (0, 1) (got " + std::to_string(alpha)
                          + ")");
    }
}

// Below this value of n lambda T the conditional sum is dominated by
// rounding; its analytic small-rate limit is used instead.
constexpr double kConditionalLimitThreshold = 1e-9;

}  // namespace

std::string_view to_string(Method m)
{
    switch (m)
    {
        case Method::unconditional:
            return "unconditional";
        case Method::conditional:
            return "conditional";
        case Method::bayes:
            return "bayes";
    }
    return "unknown";
}

std::string_view to_string(Sidedness s)
{
    switch (s)
    {
        case Sidedness::one_sided_upper:
            return "one-sided-upper";
        case Sidedness::two_sided:
            return "two-sided";
    }
    return "unknown";
}

Method method_from_string(std::string_view name)
{
    for (auto m : {Method::unconditional, Method::conditional, Method::bayes})
    {
        if (name == to_string(m))
            return m;
    }
    throw ValidationError("unknown method '" + std::string(name) + "'");
}

Sidedness sidedness_from_string(std::string_view name)
{
    for (auto s : {Sidedness::one_sided_upper, Sidedness::two_sided})
    {
        if (name == to_string(s))
            return s;
    }
    throw ValidationError("unknown sidedness '" + std::string(name) + "'");
}

double solve_monotone(std::function<double(double)> const& f,
                      double target,
                      double bracket_lo,
                      double bracket_hi,
                      double tol)
{
    if (!(bracket_lo > 0) || !(bracket_hi > bracket_lo) || !(tol > 0))
    {
        throw DomainError("solve_monotone requires 0 < lo < hi and tol > 0");
    }
    double lo = bracket_lo;
    double hi = bracket_hi;
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo < f_hi)
    {
        throw ContractError("solve_monotone: f is increasing on the bracket ("
                            "f(lo)=" + std::to_string(f_lo)
                            + " < f(hi)=" + std::to_string(f_hi) + ")");
    }
    for (int i = 0; f_lo < target; ++i)
    {
        if (i == kMaxBracketSteps)
        {
            throw NoRootError("solve_monotone: target " + std::to_string(target)
                              + " exceeds f on (0, hi]");
        }
        hi = lo;
        f_hi = f_lo;
        lo *= 0.5;
        f_lo = f(lo);
    }
    for (int i = 0; f_hi > target; ++i)
    {
        if (i == kMaxBracketSteps)
        {
            throw NoRootError("solve_monotone: target " + std::to_string(target)
                              + " lies below f on [lo, inf)");
        }
        lo = hi;
        f_lo = f_hi;
        hi *= 2;
        f_hi = f(hi);
    }
    if (std::fabs(f_lo - target) <= tol)
        return lo;
    if (std::fabs(f_hi - target) <= tol)
        return hi;

    double best = lo;
    double best_residual = std::fabs(f_lo - target);
    for (int i = 0; i < kMaxBisections; ++i)
    {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        double const f_mid = f(mid);
        double const residual = std::fabs(f_mid - target);
        if (residual < best_residual)
        {
            best = mid;
            best_residual = residual;
        }
        if (residual <= tol)
            return mid;
        if (f_mid > target)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericError("solve_monotone: bisection stalled with residual "
                       + std::to_string(best_residual) + " at x="
                       + std::to_string(best));
}

IntervalResult ci_unconditional(CensoredSample const& sample,
                                double alpha,
                                ZeroFailureRule zero_rule)
{
    check_alpha(alpha);
    int const n = sample.n();
    double const t = sample.truncation_time();
    auto const stat = sufficient_stat(sample);
    if (stat.failure_count == 0)
    {
        if (zero_rule == ZeroFailureRule::one_sided_upper)
        {
            return {0.0,
                    -std::log1p(-alpha) / (n * t),
                    1 - alpha,
                    Method::unconditional,
                    Sidedness::one_sided_upper};
        }
        return {-std::log1p(-alpha / 2) / (n * t),
                -std::log(alpha / 2) / (n * t),
                1 - alpha,
                Method::unconditional,
                Sidedness::two_sided};
    }

    double const observed = stat.failure_count / stat.total_time;
    auto const cdf_at_observed = [&](double lambda) {
        return ExactDist(n, t, lambda).cdf(observed);
    };
    double const lower = solve_monotone(cdf_at_observed,
                                        1 - alpha / 2,
                                        observed / 100,
                                        observed * 100,
                                        kIntervalResidualTol);
    double const upper = solve_monotone(cdf_at_observed,
                                        alpha / 2,
                                        observed / 100,
                                        observed * 100,
                                        kIntervalResidualTol);
    return {lower, upper, 1 - alpha, Method::unconditional, Sidedness::two_sided};
}

IntervalResult ci_conditional(CensoredSample const& sample, double alpha)
{
    check_alpha(alpha);
    int const n = sample.n();
    double const t = sample.truncation_time();
    auto const stat = sufficient_stat(sample);
    if (stat.failure_count == 0)
    {
        throw UndefinedMethodError(
            "conditional interval is undefined for D=0: the conditional "
            "approach gives no inference without an observed failure");
    }
    double const observed = stat.failure_count / stat.total_time;
    double const sup_cdf = conditional_cdf_small_rate_limit(n, t, observed);
    if (!(sup_cdf > 1 - alpha / 2))
    {
        throw NoRootError("conditional lower bound has no root: P(est <= "
                          + std::to_string(observed)
                          + " | D > 0) stays below 1 - alpha/2 for all lambda");
    }
    if (!(sup_cdf > alpha / 2))
    {
        throw NoRootError("conditional upper bound has no root");
    }

    auto const conditional_at_observed = [&](double lambda) {
        if (n * lambda * t < kConditionalLimitThreshold)
            return sup_cdf;
        return ExactDist(n, t, lambda).conditional_cdf(observed);
    };
    double const lower = solve_monotone(conditional_at_observed,
                                        1 - alpha / 2,
                                        observed / 100,
                                        observed * 100,
                                        kIntervalResidualTol);
    double const upper = solve_monotone(conditional_at_observed,
                                        alpha / 2,
                                        observed / 100,
                                        observed * 100,
                                        kIntervalResidualTol);
    return {lower, upper, 1 - alpha, Method::conditional, Sidedness::two_sided};
}

}  // namespace tte
