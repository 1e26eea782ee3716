#include "tte/joint_sets.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tte/error.hpp"

namespace tte {
namespace {

void check_rate(double lambda)
{
    if (!(lambda > 0))
        throw DomainError("joint set: lambda must be positive");
}

void check_shape(double beta)
{
    if (!(beta > 0))
        throw DomainError("joint set: beta must be positive");
}

// -ln(1 - alpha) / n: the bound on n lambda T for the exponential family.
double rate_budget(JointSetSpec const& spec)
{
    return -std::log1p(-spec.alpha) / spec.n;
}

// 1 - (1 - alpha)^(1/n)
double ge_budget(JointSetSpec const& spec)
{
    return -std::expm1(std::log1p(-spec.alpha) / spec.n);
}

}  // namespace

std::string_view to_string(JointModel m)
{
    switch (m)
    {
        case JointModel::two_param_exponential:
            return "two-param-exponential";
        case JointModel::weibull:
            return "weibull";
        case JointModel::generalized_exponential:
            return "generalized-exponential";
    }
    return "unknown";
}

JointModel joint_model_from_string(std::string_view name)
{
    for (auto m : {JointModel::two_param_exponential,
                   JointModel::weibull,
                   JointModel::generalized_exponential})
    {
        if (name == to_string(m))
            return m;
    }
    throw ValidationError("unknown joint-set model '" + std::string(name)
                          + "' (expected two-param-exponential, weibull or "
                            "generalized-exponential)");
}

void JointSetSpec::validate() const
{
    if (n < 1)
        throw DomainError("joint set: n must be at least 1");
    if (!(truncation_time > 0) || !std::isfinite(truncation_time))
        throw DomainError("joint set: T must be positive and finite");
    if (!(alpha > 0) || !(alpha < 1))
        throw DomainError("joint set: alpha must lie in (0, 1)");
}

double prob_no_failure(JointSetSpec const& spec, double theta1, double theta2)
{
    spec.validate();
    double const t = spec.truncation_time;
    switch (spec.model)
    {
        case JointModel::two_param_exponential:
            check_rate(theta2);
            if (theta1 >= t)
                return 1.0;
            return std::exp(-spec.n * theta2 * (t - theta1));
        case JointModel::weibull:
            check_shape(theta1);
            check_rate(theta2);
            return std::exp(-spec.n * theta2 * std::pow(t, theta1));
        case JointModel::generalized_exponential: {
            check_shape(theta1);
            check_rate(theta2);
            // (1 - e^(-lambda T))^beta, via expm1 to keep small rates exact
            double const single = std::exp(theta1 * std::log(-std::expm1(-theta2 * t)));
            return std::exp(spec.n * std::log1p(-single));
        }
    }
    throw DomainError("joint set: unknown model");
}

bool joint_set_contains(JointSetSpec const& spec, double theta1, double theta2)
{
    spec.validate();
    check_rate(theta2);
    if (spec.model != JointModel::two_param_exponential)
        check_shape(theta1);
    else if (!(theta1 < spec.truncation_time))
        return false;
    // Each inequality is monotone in lambda, so it is equivalent to lying on
    // or below the closed-form boundary rate at the same first coordinate.
    return theta2 <= joint_set_boundary_rate(spec, theta1);
}

double joint_set_boundary_rate(JointSetSpec const& spec, double theta1)
{
    spec.validate();
    double const t = spec.truncation_time;
    switch (spec.model)
    {
        case JointModel::two_param_exponential:
            if (!(theta1 < t))
                return std::numeric_limits<double>::infinity();
            return rate_budget(spec) / (t - theta1);
        case JointModel::weibull:
            check_shape(theta1);
            return rate_budget(spec) / std::pow(t, theta1);
        case JointModel::generalized_exponential: {
            check_shape(theta1);
            double const single = std::pow(ge_budget(spec), 1.0 / theta1);
            return -std::log1p(-single) / t;
        }
    }
    throw DomainError("joint set: unknown model");
}

std::vector<BoundaryPoint> joint_set_boundary(JointSetSpec const& spec,
                                              std::span<double const> axis)
{
    if (axis.empty())
        throw ValidationError("joint set boundary: the axis grid is empty");
    std::vector<BoundaryPoint> points;
    points.reserve(axis.size());
    for (double theta1 : axis)
    {
        double const rate = joint_set_boundary_rate(spec, theta1);
        points.push_back({theta1, rate, std::isinf(rate)});
    }
    return points;
}

}  // namespace tte
