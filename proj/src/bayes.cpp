#include "tte/bayes.hpp"

#include <cmath>
#include <string>

#include "tte/error.hpp"
#include "tte/specfun.hpp"

namespace tte {

GammaPrior::GammaPrior(double shape, double rate) : shape_(shape), rate_(rate)
{
    if (!(shape > 0) || !(rate > 0) || !std::isfinite(shape)
        || !std::isfinite(rate))
    {
        throw DomainError("gamma prior needs finite a > 0 and b > 0 (got a="
                          + std::to_string(shape) + ", b=" + std::to_string(rate)
                          + ")");
    }
}

double GammaPosterior::upper_tail(double x) const
{
    if (!(x > 0))
        return 1.0;
    return specfun::reg_upper_gamma(shape, rate * x);
}

GammaPosterior posterior(CensoredSample const& sample, GammaPrior const& prior)
{
    auto const stat = sufficient_stat(sample);
    return {prior.shape() + stat.failure_count, prior.rate() + stat.total_time};
}

double bayes_estimate(CensoredSample const& sample, GammaPrior const& prior)
{
    return posterior(sample, prior).mean();
}

IntervalResult credible_interval(CensoredSample const& sample,
                                 GammaPrior const& prior,
                                 double alpha)
{
    if (!(alpha > 0) || !(alpha < 1))
        throw DomainError("alpha must lie in (0, 1)");
    auto const post = posterior(sample, prior);
    double const lower
        = specfun::inv_reg_upper_gamma(post.shape, 1 - alpha / 2) / post.rate;
    double const upper
        = specfun::inv_reg_upper_gamma(post.shape, alpha / 2) / post.rate;
    return {lower, upper, 1 - alpha, Method::bayes, Sidedness::two_sided};
}

}  // namespace tte
