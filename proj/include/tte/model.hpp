#pragma once

#include <span>
#include <vector>

namespace tte {

/// Type-I censored sample: n items on test, stopped at time T, with the
/// ordered failure times observed in (0, T].
class CensoredSample
{
  public:
    /// Validates the invariants and throws ValidationError on violation:
    /// n >= 1, T > 0 and finite, at most n failures, strictly increasing,
    /// each in (0, T]. Failures are never reordered.
    CensoredSample(int n, double truncation_time, std::vector<double> failures);

    int n() const { return n_; }
    double truncation_time() const { return truncation_time_; }
    std::span<double const> failures() const { return failures_; }
    int failure_count() const { return static_cast<int>(failures_.size()); }

  private:
    int n_;
    double truncation_time_;
    std::vector<double> failures_;
};

/// Failure count D and total time on test S = sum(failures) + (n - D) T.
struct SufficientStat
{
    int failure_count;
    double total_time;
};

SufficientStat sufficient_stat(CensoredSample const& sample);

/// Censored-data log-likelihood: -n lambda T when D = 0, otherwise
/// ln(n!/(n-D)!) + D ln(lambda) - lambda S. Throws DomainError for
/// lambda <= 0.
double log_likelihood(CensoredSample const& sample, double lambda);

/// D / S, which is 0 when no failure is observed and the MLE otherwise.
double estimate_lambda(CensoredSample const& sample);

}  // namespace tte
