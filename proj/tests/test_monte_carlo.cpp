#include <cmath>

#include <gtest/gtest.h>

#include "tte/error.hpp"
#include "tte/monte_carlo.hpp"

using namespace tte;

namespace {

SimConfig cell(int n, double lambda, double t, Method m, int reps, std::uint64_t seed = 42)
{
    SimConfig c;
    c.n = n;
    c.lambda_true = lambda;
    c.truncation_time = t;
    c.replications = reps;
    c.seed = seed;
    c.method = m;
    if (m == Method::bayes)
        c.prior = GammaPrior::noninformative();
    return c;
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct)
{
    auto a = rng::replication_stream(1, 0);
    auto b = rng::replication_stream(1, 0);
    auto c = rng::replication_stream(1, 1);
    auto d = rng::replication_stream(2, 0);
    for (int i = 0; i < 10; ++i)
    {
        auto const va = a();
        EXPECT_EQ(va, b());
        EXPECT_NE(va, c());
        EXPECT_NE(va, d());
    }
}

TEST(Rng, UniformInOpenClosedUnitInterval)
{
    auto gen = rng::replication_stream(9, 9);
    double sum = 0;
    int const m = 200000;
    for (int i = 0; i < m; ++i)
    {
        double const u = rng::uniform_open_closed(gen);
        ASSERT_GT(u, 0.0);
        ASSERT_LE(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / m, 0.5, 3 * std::sqrt(1.0 / 12 / m) * 1.5);
}

TEST(GenerateSample, HugeRateFailsEverything)
{
    auto gen = rng::replication_stream(3, 0);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(generate_sample(7, 1e12, 1, gen).failure_count(), 7);
}

TEST(GenerateSample, NoFailureFrequency)
{
    int const m = 1000000;
    int none = 0;
    double total_d = 0;
    for (int i = 0; i < m; ++i)
    {
        auto gen = rng::replication_stream(77, static_cast<std::uint64_t>(i));
        auto const s = generate_sample(5, 1, 0.5, gen);
        none += s.failure_count() == 0 ? 1 : 0;
        total_d += s.failure_count();
    }
    double const p = std::exp(-2.5);
    EXPECT_NEAR(static_cast<double>(none) / m, p, 3 * std::sqrt(p * (1 - p) / m));
    EXPECT_NEAR(p, 0.0820850, 1e-7);
    double const q = -std::expm1(-0.5);
    double const mean = 5 * q;
    double const se = std::sqrt(5 * q * (1 - q) / m);
    EXPECT_NEAR(total_d / m, mean, 3 * se);
}

TEST(SimConfig, Validation)
{
    EXPECT_NO_THROW(cell(5, 1, 1, Method::unconditional, 10).validate());
    auto bayes_without_prior = cell(5, 1, 1, Method::unconditional, 10);
    bayes_without_prior.method = Method::bayes;
    EXPECT_THROW(bayes_without_prior.validate(), ValidationError);
    auto prior_without_bayes = cell(5, 1, 1, Method::unconditional, 10);
    prior_without_bayes.prior = GammaPrior(1, 1);
    EXPECT_THROW(prior_without_bayes.validate(), ValidationError);
    EXPECT_THROW(cell(0, 1, 1, Method::unconditional, 10).validate(), ValidationError);
    EXPECT_THROW(cell(5, 0, 1, Method::unconditional, 10).validate(), ValidationError);
    EXPECT_THROW(cell(5, 1, -1, Method::unconditional, 10).validate(), ValidationError);
    EXPECT_THROW(cell(5, 1, 1, Method::unconditional, 0).validate(), ValidationError);
    auto bad_alpha = cell(5, 1, 1, Method::unconditional, 10);
    bad_alpha.alpha = 1;
    EXPECT_THROW(bad_alpha.validate(), ValidationError);
}

TEST(RunCell, DeterministicAcrossThreadCounts)
{
    for (auto m : {Method::unconditional, Method::conditional, Method::bayes})
    {
        auto const c = cell(5, 0.5, 1, m, 300, 123);
        auto const one = run_cell(c, 1);
        EXPECT_EQ(run_cell(c, 1), one);
        EXPECT_EQ(run_cell(c, 2), one);
        EXPECT_EQ(run_cell(c, 7), one);
    }
}

TEST(RunCell, SummaryInvariants)
{
    for (auto m : {Method::unconditional, Method::conditional, Method::bayes})
    {
        auto const c = cell(5, 0.5, 1, m, 400, 9);
        auto const s = run_cell(c, 1);
        EXPECT_LE(s.bias * s.bias, s.mse * (1 + 1e-12));
        EXPECT_GE(s.coverage_pct, 0);
        EXPECT_LE(s.coverage_pct, 100);
        EXPECT_LE(s.effective_replications, c.replications);
        EXPECT_GT(s.avg_length, 0);
        if (m == Method::conditional)
            EXPECT_EQ(s.effective_replications, c.replications - s.d_zero_count);
        else
            EXPECT_EQ(s.effective_replications, c.replications);
        if (m != Method::conditional)
            EXPECT_EQ(s.no_root_count, 0);
    }
}

TEST(RunCell, ZeroFailureRuleChangesUnconditionalCoverage)
{
    // lambda T small: about 8% of replications have D = 0.
    auto one_sided = cell(5, 0.5, 1, Method::unconditional, 2000, 5);
    one_sided.zero_rule = ZeroFailureRule::one_sided_upper;
    auto equal_tail = one_sided;
    equal_tail.zero_rule = ZeroFailureRule::equal_tail;
    auto const a = run_cell(one_sided, 1);
    auto const b = run_cell(equal_tail, 1);
    EXPECT_GT(a.d_zero_count, 100);
    EXPECT_EQ(a.d_zero_count, b.d_zero_count);
    // The one-sided interval misses lambda = 0.5 every time D = 0.
    EXPECT_NEAR(b.coverage_pct - a.coverage_pct, 100.0 * a.d_zero_count / 2000, 1e-9);
    EXPECT_EQ(a.bias, b.bias);
}

TEST(RunCell, MethodsAgreeWhenAtomNegligible)
{
    auto const u = run_cell(cell(20, 2, 2, Method::unconditional, 300, 17), 1);
    auto const c = run_cell(cell(20, 2, 2, Method::conditional, 300, 17), 1);
    EXPECT_EQ(u.d_zero_count, 0);
    EXPECT_EQ(u.bias, c.bias);
    EXPECT_EQ(u.coverage_pct, c.coverage_pct);
    EXPECT_NEAR(u.avg_length, c.avg_length, 1e-6 * u.avg_length);
}

TEST(RunGrid, SingletonEqualsRunCell)
{
    std::vector<SimConfig> const configs{cell(5, 1, 2, Method::bayes, 500, 31)};
    auto const grid = run_grid(configs, 2);
    ASSERT_EQ(grid.size(), 1u);
    ASSERT_TRUE(grid[0].summary.has_value());
    EXPECT_EQ(*grid[0].summary, run_cell(configs[0], 1));
}

TEST(RunGrid, CollectsPerCellErrors)
{
    auto bad = cell(5, 1, 1, Method::unconditional, 10);
    bad.n = 60;
    std::vector<SimConfig> const configs{cell(5, 1, 1, Method::bayes, 50), bad,
                                         cell(6, 1, 1, Method::bayes, 50)};
    auto const grid = run_grid(configs, 1);
    ASSERT_EQ(grid.size(), 3u);
    EXPECT_TRUE(grid[0].summary.has_value());
    EXPECT_FALSE(grid[1].summary.has_value());
    EXPECT_FALSE(grid[1].error.empty());
    EXPECT_TRUE(grid[2].summary.has_value());
    EXPECT_THROW(run_grid(std::vector<SimConfig>{}, 1), ValidationError);
}

TEST(PaperDesign, Layout)
{
    auto const cells = paper_design(Method::bayes, 7);
    ASSERT_EQ(cells.size(), 24u);
    EXPECT_EQ(cells[0].lambda_true, 0.5);
    EXPECT_EQ(cells[0].n, 5);
    EXPECT_EQ(cells[0].truncation_time, 1.0);
    EXPECT_EQ(cells[1].truncation_time, 2.0);
    EXPECT_EQ(cells[2].n, 10);
    EXPECT_EQ(cells[23].lambda_true, 2.0);
    EXPECT_EQ(cells[23].n, 20);
    for (auto const& c : cells)
    {
        EXPECT_EQ(c.replications, 5000);
        EXPECT_EQ(c.seed, 7u);
        ASSERT_TRUE(c.prior.has_value());
        EXPECT_EQ(*c.prior, GammaPrior::noninformative());
    }
    EXPECT_FALSE(paper_design(Method::conditional, 7)[0].prior.has_value());
}

TEST(RunCell, BayesScaleInvariantCoverage)
{
    // Equal lambda T with a shared seed gives the same coverage.
    auto const a = run_cell(cell(10, 0.5, 2, Method::bayes, 2000, 8), 1);
    auto const b = run_cell(cell(10, 1.0, 1, Method::bayes, 2000, 8), 1);
    EXPECT_NEAR(a.coverage_pct, b.coverage_pct, 0.2);
}
