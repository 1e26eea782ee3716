#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace tte {

/// Two-parameter lifetime models admitting an exact joint confidence set
/// when no failure is observed in [0, T]. The set collects every parameter
/// pair with P(D = 0) >= 1 - alpha.
///
/// Parameter order is (theta1, theta2):
///   two_param_exponential   (mu, lambda)    P(D=0) = e^(-n lambda (T - mu))
///   weibull                 (beta, lambda)  P(D=0) = e^(-n lambda T^beta)
///   generalized_exponential (beta, lambda)  P(D=0) = (1 - (1 - e^(-lambda T))^beta)^n
enum class JointModel
{
    two_param_exponential,
    weibull,
    generalized_exponential,
};

std::string_view to_string(JointModel m);
/// Accepts the names printed by to_string; throws ValidationError otherwise.
JointModel joint_model_from_string(std::string_view name);

struct JointSetSpec
{
    JointModel model;
    int n;
    double truncation_time;
    double alpha;

    /// Throws DomainError unless n >= 1, T > 0 and alpha in (0, 1).
    void validate() const;
};

/// Exact probability of observing no failure under the model.
double prob_no_failure(JointSetSpec const& spec, double theta1, double theta2);

/// Closed-form membership test. Throws DomainError for lambda <= 0 or, in
/// the shape models, beta <= 0. For the location model a pair with
/// mu >= T is outside the set.
bool joint_set_contains(JointSetSpec const& spec, double theta1, double theta2);

struct BoundaryPoint
{
    double theta1;
    double theta2;
    /// Set when the boundary rate is not finite (mu at or beyond T); theta2
    /// then carries +inf.
    bool unbounded;
};

/// Boundary rate lambda as a function of the first coordinate, where
/// P(D = 0) = 1 - alpha holds with equality:
///   two_param_exponential   lambda = -ln(1 - alpha) / (n (T - mu))
///   weibull                 lambda = -ln(1 - alpha) / (n T^beta)
///   generalized_exponential lambda = -ln(1 - (1 - (1 - alpha)^(1/n))^(1/beta)) / T
double joint_set_boundary_rate(JointSetSpec const& spec, double theta1);

/// Evaluates the boundary on every value of the first-coordinate axis
/// (mu for the location model, beta otherwise). Throws ValidationError for
/// an empty axis.
std::vector<BoundaryPoint> joint_set_boundary(JointSetSpec const& spec,
                                              std::span<double const> axis);

}  // namespace tte
