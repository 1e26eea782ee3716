#include "tte/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tte/error.hpp"
#include "tte/specfun.hpp"

namespace tte {

CensoredSample::CensoredSample(int n,
                               double truncation_time,
                               std::vector<double> failures)
    : n_(n), truncation_time_(truncation_time), failures_(std::move(failures))
{
    if (n_ < 1)
    {
        throw ValidationError("sample size n must be at least 1 (got "
                              + std::to_string(n_) + ")");
    }
    if (!(truncation_time_ > 0) || !std::isfinite(truncation_time_))
    {
        throw ValidationError("truncation time T must be positive and finite");
    }
    if (failures_.size() > static_cast<std::size_t>(n_))
    {
        throw ValidationError("more failures (" + std::to_string(failures_.size())
                              + ") than items on test (" + std::to_string(n_)
                              + ")");
    }
    for (std::size_t i = 0; i < failures_.size(); ++i)
    {
        double const x = failures_[i];
        if (!(x > 0) || !(x <= truncation_time_))
        {
            throw ValidationError("failure time #" + std::to_string(i + 1)
                                  + " = " + std::to_string(x)
                                  + " lies outside (0, T]");
        }
        if (i > 0 && !(failures_[i - 1] < x))
        {
            throw ValidationError(
                "failure times must be strictly increasing (violated at #"
                + std::to_string(i + 1) + ")");
        }
    }
}

SufficientStat sufficient_stat(CensoredSample const& sample)
{
    auto const failures = sample.failures();
    int const d = sample.failure_count();
    double const sum = std::accumulate(failures.begin(), failures.end(), 0.0);
    return {d, sum + (sample.n() - d) * sample.truncation_time()};
}

double log_likelihood(CensoredSample const& sample, double lambda)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
    {
        throw DomainError("log_likelihood requires lambda > 0");
    }
    auto const stat = sufficient_stat(sample);
    if (stat.failure_count == 0)
    {
        return -sample.n() * lambda * sample.truncation_time();
    }
    // ln(n! / (n - D)!)
    double const log_falling = specfun::log_gamma(sample.n() + 1.0)
                               - specfun::log_gamma(sample.n() - stat.failure_count + 1.0);
    return log_falling + stat.failure_count * std::log(lambda)
           - lambda * stat.total_time;
}

double estimate_lambda(CensoredSample const& sample)
{
    auto const stat = sufficient_stat(sample);
    if (stat.failure_count == 0)
        return 0.0;
    return stat.failure_count / stat.total_time;
}

}  // namespace tte
