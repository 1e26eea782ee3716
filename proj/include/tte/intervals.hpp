#pragma once

#include <functional>
#include <string_view>

#include "tte/model.hpp"

namespace tte {

enum class Method
{
    unconditional,
    conditional,
    bayes,
};

enum class Sidedness
{
    one_sided_upper,
    two_sided,
};

std::string_view to_string(Method m);
std::string_view to_string(Sidedness s);
/// Throws ValidationError for unknown names.
Method method_from_string(std::string_view name);
Sidedness sidedness_from_string(std::string_view name);

struct IntervalResult
{
    double lower;
    double upper;
    double level;  // 1 - alpha
    Method method;
    Sidedness sided;

    double length() const { return upper - lower; }
    /// One-sided intervals are open at zero; two-sided ones are open at both
    /// ends.
    bool contains(double lambda) const
    {
        if (sided == Sidedness::one_sided_upper)
            return lambda > lower && lambda <= upper;
        return lambda > lower && lambda < upper;
    }

    friend bool operator==(IntervalResult const&, IntervalResult const&) = default;
};

/// Solves f(x) = target for a strictly decreasing f on (0, inf).
///
/// The bracket is widened geometrically (halving lo, doubling hi, at most 60
/// times each) until f(lo) >= target >= f(hi), then bisected for at most 200
/// iterations until |f(x) - target| <= tol.
///
/// Throws ContractError if f(lo) < f(hi) on the initial bracket, NoRootError
/// if the target cannot be bracketed, NumericError if bisection stalls above
/// the tolerance.
double solve_monotone(std::function<double(double)> const& f,
                      double target,
                      double bracket_lo,
                      double bracket_hi,
                      double tol);

/// How the unconditional interval is formed when no failure is observed.
enum class ZeroFailureRule
{
    /// (0, -ln(1 - alpha) / (nT)]: the values of lambda with P(D = 0) >= 1 - alpha.
    one_sided_upper,
    /// The two equal-tail equations evaluated at an observed estimate of 0,
    /// which reduce to e^(-n lambda T) = 1 - alpha/2 and = alpha/2.
    equal_tail,
};

inline constexpr double kIntervalResidualTol = 1e-8;

/// Exact interval from the unconditional law of D/S. For D > 0 the bounds
/// solve cdf_lower(estimate) = 1 - alpha/2 and cdf_upper(estimate) = alpha/2.
IntervalResult ci_unconditional(CensoredSample const& sample,
                                double alpha,
                                ZeroFailureRule zero_rule
                                = ZeroFailureRule::one_sided_upper);

/// Exact interval from the law of D/S given D > 0.
///
/// Throws UndefinedMethodError when D = 0, and NoRootError when an
/// equation has no solution in lambda > 0 (the observed estimate is so close
/// to 1/(nT) that even lambda -> 0 cannot reach the target probability).
IntervalResult ci_conditional(CensoredSample const& sample, double alpha);

}  // namespace tte
