#pragma once

#include "tte/intervals.hpp"
#include "tte/model.hpp"

namespace tte {

/// Conjugate gamma prior on lambda with density proportional to
/// lambda^(a-1) e^(-b lambda). Both parameters must be positive; the
/// improper a = b = 0 limit is not representable.
class GammaPrior
{
  public:
    GammaPrior(double shape, double rate);

    /// a = b = 0.001, the near-flat configuration used for the simulation
    /// tables.
    static GammaPrior noninformative() { return GammaPrior(0.001, 0.001); }

    double shape() const { return shape_; }
    double rate() const { return rate_; }

    friend bool operator==(GammaPrior const&, GammaPrior const&) = default;

  private:
    double shape_;
    double rate_;
};

/// Posterior of lambda: Gamma with shape a + D and rate b + S.
struct GammaPosterior
{
    double shape;
    double rate;

    double mean() const { return shape / rate; }
    /// Posterior P(lambda > x).
    double upper_tail(double x) const;
};

GammaPosterior posterior(CensoredSample const& sample, GammaPrior const& prior);

/// Posterior mean (a + D) / (b + S), the Bayes estimate under squared error.
double bayes_estimate(CensoredSample const& sample, GammaPrior const& prior);

/// Equal-tail credible interval: each tail of the posterior holds alpha/2.
IntervalResult credible_interval(CensoredSample const& sample,
                                 GammaPrior const& prior,
                                 double alpha);

}  // namespace tte
