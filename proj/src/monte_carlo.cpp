#include "tte/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "tte/error.hpp"

namespace tte {
namespace {

enum class Outcome
{
    interval,
    excluded,  // method does not apply (conditional with D = 0)
    empty,     // conditional equations without a root
};

struct Replicate
{
    double estimate = 0;
    Outcome outcome = Outcome::interval;
    double length = 0;
    bool covers = false;
    bool zero_failures = false;
    std::string error;
};

Replicate run_replicate(SimConfig const& config, std::uint64_t index)
{
    auto gen = rng::replication_stream(config.seed, index);
    auto const sample = generate_sample(
        config.n, config.lambda_true, config.truncation_time, gen);

    Replicate rep;
    rep.zero_failures = sample.failure_count() == 0;
    rep.estimate = config.method == Method::bayes
                       ? bayes_estimate(sample, *config.prior)
                       : estimate_lambda(sample);

    std::optional<IntervalResult> interval;
    switch (config.method)
    {
        case Method::unconditional:
            interval = ci_unconditional(sample, config.alpha, config.zero_rule);
            break;
        case Method::conditional:
            if (rep.zero_failures)
            {
                rep.outcome = Outcome::excluded;
                return rep;
            }
            try
            {
                interval = ci_conditional(sample, config.alpha);
            }
            catch (NoRootError const&)
            {
                rep.outcome = Outcome::empty;
                return rep;
            }
            break;
        case Method::bayes:
            interval = credible_interval(sample, *config.prior, config.alpha);
            break;
    }
    rep.length = interval->length();
    rep.covers = interval->contains(config.lambda_true);
    return rep;
}

}  // namespace

void SimConfig::validate() const
{
    if (n < 1 || n > 50)
        throw ValidationError("simulation n must lie in [1, 50]");
    if (!(lambda_true > 0) || !std::isfinite(lambda_true))
        throw ValidationError("simulation lambda must be positive and finite");
    if (!(truncation_time > 0) || !std::isfinite(truncation_time))
        throw ValidationError("simulation T must be positive and finite");
    if (!(alpha > 0) || !(alpha < 1))
        throw ValidationError("simulation alpha must lie in (0, 1)");
    if (replications < 1)
        throw ValidationError("simulation needs at least one replication");
    if ((method == Method::bayes) != prior.has_value())
    {
        throw ValidationError(
            "a gamma prior must be given exactly when the method is bayes");
    }
}

CensoredSample generate_sample(int n,
                               double lambda,
                               double truncation_time,
                               rng::Xoshiro256StarStar& gen)
{
    std::vector<double> failures;
    failures.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        double const lifetime = -std::log(rng::uniform_open_closed(gen)) / lambda;
        if (lifetime <= truncation_time)
            failures.push_back(lifetime);
    }
    std::sort(failures.begin(), failures.end());
    // Ties and zero lifetimes (probability ~2^-53 per draw) are nudged apart.
    for (std::size_t i = 0; i < failures.size(); ++i)
    {
        double const floor = i == 0 ? 0.0 : failures[i - 1];
        if (!(failures[i] > floor))
            failures[i] = std::nextafter(floor, truncation_time);
    }
    return CensoredSample(n, truncation_time, std::move(failures));
}

unsigned default_thread_count()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

SimSummary run_cell(SimConfig const& config, unsigned threads)
{
    config.validate();
    if (threads == 0)
        threads = default_thread_count();
    auto const count = static_cast<std::size_t>(config.replications);
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    std::vector<Replicate> reps(count);
    auto worker = [&](unsigned offset) {
        for (std::size_t i = offset; i < count; i += threads)
        {
            try
            {
                reps[i] = run_replicate(config, i);
            }
            catch (std::exception const& e)
            {
                reps[i].error = e.what();
            }
        }
    };
    if (threads == 1)
    {
        worker(0);
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker, t);
    }

    SimSummary summary;
    double sum_error = 0;
    double sum_sq_error = 0;
    double sum_length = 0;
    int covered = 0;
    for (std::size_t i = 0; i < count; ++i)
    {
        auto const& rep = reps[i];
        if (!rep.error.empty())
        {
            throw NumericError("replication " + std::to_string(i)
                               + " (seed " + std::to_string(config.seed)
                               + ", offset " + std::to_string(i)
                               + ") failed: " + rep.error);
        }
        double const err = rep.estimate - config.lambda_true;
        sum_error += err;
        sum_sq_error += err * err;
        if (rep.zero_failures)
            ++summary.d_zero_count;
        switch (rep.outcome)
        {
            case Outcome::excluded:
                continue;
            case Outcome::empty:
                ++summary.no_root_count;
                break;
            case Outcome::interval:
                sum_length += rep.length;
                covered += rep.covers ? 1 : 0;
                break;
        }
        ++summary.effective_replications;
    }
    summary.bias = sum_error / static_cast<double>(count);
    summary.mse = sum_sq_error / static_cast<double>(count);
    if (summary.effective_replications > 0)
    {
        summary.avg_length = sum_length / summary.effective_replications;
        summary.coverage_pct = 100.0 * covered / summary.effective_replications;
    }
    return summary;
}

std::vector<CellResult> run_grid(std::span<SimConfig const> configs,
                                 unsigned threads)
{
    if (configs.empty())
        throw ValidationError("simulation grid is empty");
    std::vector<CellResult> results;
    results.reserve(configs.size());
    for (auto const& config : configs)
    {
        CellResult cell{config, std::nullopt, {}};
        try
        {
            cell.summary = run_cell(config, threads);
        }
        catch (std::exception const& e)
        {
            cell.error = e.what();
        }
        results.push_back(std::move(cell));
    }
    return results;
}

std::vector<SimConfig> paper_design(Method method,
                                    std::uint64_t seed,
                                    int replications)
{
    std::vector<SimConfig> configs;
    for (double lambda : {0.5, 1.0, 2.0})
    {
        for (int n : {5, 10, 15, 20})
        {
            for (double t : {1.0, 2.0})
            {
                SimConfig c;
                c.n = n;
                c.lambda_true = lambda;
                c.truncation_time = t;
                c.alpha = 0.05;
                c.replications = replications;
                c.seed = seed;
                c.method = method;
                if (method == Method::bayes)
                    c.prior = GammaPrior::noninformative();
                configs.push_back(c);
            }
        }
    }
    return configs;
}

}  // namespace tte
