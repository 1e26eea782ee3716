#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tte/bayes.hpp"
#include "tte/intervals.hpp"
#include "tte/model.hpp"
#include "tte/rng.hpp"

namespace tte {

/// One cell of a coverage study.
struct SimConfig
{
    int n = 5;
    double lambda_true = 1.0;
    double truncation_time = 1.0;
    double alpha = 0.05;
    int replications = 5000;
    std::uint64_t seed = 0;
    Method method = Method::unconditional;
    /// Required for (and only for) Method::bayes.
    std::optional<GammaPrior> prior;
    /// Interval used by the unconditional method when D = 0.
    ZeroFailureRule zero_rule = ZeroFailureRule::equal_tail;

    /// Throws ValidationError on inconsistent settings.
    void validate() const;
};

struct SimSummary
{
    double bias = 0;
    double mse = 0;
    double avg_length = 0;
    double coverage_pct = 0;
    /// Replications in the coverage and length denominators.
    int effective_replications = 0;
    /// Replications with no observed failure.
    int d_zero_count = 0;
    /// Conditional replications whose interval equations had no root.
    int no_root_count = 0;

    friend bool operator==(SimSummary const&, SimSummary const&) = default;
};

/// Draws n exponential(lambda) lifetimes by inversion and keeps the sorted
/// values at or below T as failures.
CensoredSample generate_sample(int n,
                               double lambda,
                               double truncation_time,
                               rng::Xoshiro256StarStar& gen);

/// Number of worker threads used when a caller passes 0.
unsigned default_thread_count();

/// Runs every replication of one cell and aggregates it.
///
/// Replication i draws from rng::replication_stream(seed, i), and the
/// aggregates are reduced in replication order, so the result does not
/// depend on the thread count. Point-estimate moments (bias, MSE) cover all
/// replications. Coverage and average length cover the replications where
/// the method applies:
///  - unconditional: every replication, with the D = 0 interval chosen by
///    config.zero_rule;
///  - conditional: replications with D >= 1; an interval whose equations
///    have no root is counted as empty (length 0, not covering);
///  - bayes: every replication, with the Bayes estimate as point estimate.
///
/// Throws NumericError naming the first failing replication index if any
/// interval computation fails otherwise.
SimSummary run_cell(SimConfig const& config, unsigned threads = 0);

struct CellResult
{
    SimConfig config;
    std::optional<SimSummary> summary;
    std::string error;  // empty on success
};

/// Runs each cell in order; a failing cell records its error and the
/// remaining cells still run.
std::vector<CellResult> run_grid(std::span<SimConfig const> configs,
                                 unsigned threads = 0);

/// The 24-cell design n in {5, 10, 15, 20}, lambda in {0.5, 1, 2},
/// T in {1, 2} for one method, ordered by lambda, then n, then T. Bayes cells
/// use the a = b = 0.001 prior. Every cell shares the seed.
std::vector<SimConfig> paper_design(Method method,
                                    std::uint64_t seed,
                                    int replications = 5000);

}  // namespace tte
