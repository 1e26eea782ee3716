// tte: exact inference for the exponential rate from time-truncated samples.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tte/bayes.hpp"
#include "tte/error.hpp"
#include "tte/exact_dist.hpp"
#include "tte/intervals.hpp"
#include "tte/io.hpp"
#include "tte/joint_sets.hpp"
#include "tte/model.hpp"
#include "tte/monte_carlo.hpp"

namespace {

using namespace tte;
using nlohmann::json;

enum ExitCode : int
{
    kOk = 0,
    kUsage = 2,
    kValidation = 3,
    kNumeric = 4,
    kUndefinedMethod = 5,
};

class UsageError : public Error
{
  public:
    using Error::Error;
};

/// "start:stop:count" (inclusive, evenly spaced) or "v1,v2,...".
std::vector<double> parse_grid(std::string const& spec)
{
    std::vector<double> values;
    auto const to_double = [&](std::string const& s) {
        try
        {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used == s.size())
                return v;
        }
        catch (std::exception const&)
        {
        }
        throw UsageError("bad grid value '" + s + "' in '" + spec + "'");
    };
    if (spec.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(part);
        if (parts.size() != 3)
            throw UsageError("grid must be start:stop:count (got '" + spec + "')");
        double const start = to_double(parts[0]);
        double const stop = to_double(parts[1]);
        int const count = static_cast<int>(to_double(parts[2]));
        if (count < 1)
            throw UsageError("grid count must be at least 1");
        for (int i = 0; i < count; ++i)
        {
            values.push_back(count == 1 ? start
                                        : start + (stop - start) * i / (count - 1));
        }
        return values;
    }
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');)
    {
        if (!part.empty())
            values.push_back(to_double(part));
    }
    if (values.empty())
        throw UsageError("grid '" + spec + "' is empty");
    return values;
}

unsigned thread_override(int flag)
{
    if (flag > 0)
        return static_cast<unsigned>(flag);
    if (char const* env = std::getenv("TTE_THREADS"))
    {
        int const v = std::atoi(env);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return 0;
}

ZeroFailureRule zero_rule_from_string(std::string const& name)
{
    if (name == "one-sided")
        return ZeroFailureRule::one_sided_upper;
    if (name == "equal-tail")
        return ZeroFailureRule::equal_tail;
    throw UsageError("unknown zero-failure rule '" + name
                     + "' (expected one-sided or equal-tail)");
}

void print_estimate(std::string const& path)
{
    auto const sample = io::read_sample_file(path);
    auto const stat = sufficient_stat(sample);
    std::cout << "n = " << sample.n() << '\n'
              << "T = " << io::format_number(sample.truncation_time()) << '\n'
              << "D = " << stat.failure_count << '\n'
              << "S = " << io::format_number(stat.total_time) << '\n'
              << "lambda_hat = " << io::format_number(estimate_lambda(sample))
              << '\n';
    if (stat.failure_count == 0)
    {
        std::cout << "note: the MLE of lambda does not exist when D=0; "
                     "the estimator D/S is 0\n";
    }
    else
    {
        std::cout << "note: lambda_hat equals the MLE since D > 0\n";
    }
}

void print_ci(std::string const& path,
              double alpha,
              std::string const& method_name,
              std::string const& zero_rule_name)
{
    auto const sample = io::read_sample_file(path);
    Method const method = method_from_string(method_name);
    IntervalResult interval{};
    double observed = estimate_lambda(sample);
    json out;
    if (method == Method::unconditional)
    {
        interval = ci_unconditional(sample, alpha, zero_rule_from_string(zero_rule_name));
    }
    else if (method == Method::conditional)
    {
        interval = ci_conditional(sample, alpha);
    }
    else
    {
        throw UsageError("ci --method must be unconditional or conditional "
                         "(use the cri command for bayes)");
    }
    out = io::to_json(interval);
    out["estimate"] = observed;
    if (sample.failure_count() > 0)
    {
        auto const law = [&](double lambda) {
            ExactDist dist(sample.n(), sample.truncation_time(), lambda);
            return method == Method::conditional ? dist.conditional_cdf(observed)
                                                 : dist.cdf(observed);
        };
        out["residual_lower"] = std::fabs(law(interval.lower) - (1 - alpha / 2));
        out["residual_upper"] = std::fabs(law(interval.upper) - alpha / 2);
    }
    std::cout << out.dump() << '\n';
}

void print_cri(std::string const& path, double alpha, double a, double b)
{
    auto const sample = io::read_sample_file(path);
    GammaPrior const prior(a, b);
    auto const interval = credible_interval(sample, prior, alpha);
    auto const post = posterior(sample, prior);
    json out = io::to_json(interval);
    out["estimate"] = bayes_estimate(sample, prior);
    out["prior_a"] = prior.shape();
    out["prior_b"] = prior.rate();
    out["posterior_mass"]
        = post.upper_tail(interval.lower) - post.upper_tail(interval.upper);
    // The exact lower quantile can lie below the smallest double (tiny a + D).
    if (interval.lower == 0)
        out["lower_underflow"] = true;
    std::cout << out.dump() << '\n';
}

void print_dist(int n,
                double t,
                double lambda,
                double b,
                std::string const& what,
                std::string const& grid_spec)
{
    auto const grid = parse_grid(grid_spec);
    if (what == "cdf-in-lambda")
    {
        if (!std::isfinite(b) || b < 0)
            throw UsageError("cdf-in-lambda needs a fixed --b >= 0");
        std::cout << "lambda,cdf\n";
        for (double l : grid)
        {
            std::cout << io::format_number(l) << ','
                      << io::format_number(ExactDist(n, t, l).cdf(b)) << '\n';
        }
        return;
    }
    if (!(lambda > 0))
        throw UsageError(what + " needs --lambda > 0");
    ExactDist const dist(n, t, lambda);
    if (what == "cdf")
    {
        std::cout << "x,cdf\n";
        for (double x : grid)
            std::cout << io::format_number(x) << ','
                      << io::format_number(dist.cdf(x)) << '\n';
    }
    else if (what == "pdf")
    {
        std::cout << "x,pdf\n";
        for (double x : grid)
            std::cout << io::format_number(x) << ','
                      << io::format_number(dist.pdf(x)) << '\n';
    }
    else
    {
        throw UsageError("--what must be cdf, pdf or cdf-in-lambda");
    }
}

void print_joint_set(std::string const& model_name,
                     int n,
                     double t,
                     double alpha,
                     std::string const& grid_spec)
{
    JointModel model;
    try
    {
        model = joint_model_from_string(model_name);
    }
    catch (ValidationError const& e)
    {
        throw UsageError(e.what());
    }
    JointSetSpec const spec{model, n, t, alpha};
    auto const axis = parse_grid(grid_spec);
    auto const points = joint_set_boundary(spec, axis);
    std::cout << (model == JointModel::two_param_exponential ? "mu" : "beta")
              << ",lambda,unbounded\n";
    for (auto const& p : points)
    {
        std::cout << io::format_number(p.theta1) << ','
                  << (p.unbounded ? std::string("inf") : io::format_number(p.theta2))
                  << ',' << (p.unbounded ? 1 : 0) << '\n';
    }
}

struct SimulateOptions
{
    std::string config_path;
    bool paper_tables = false;
    int n = 10;
    double lambda = 1.0;
    double t = 1.0;
    double alpha = 0.05;
    int replications = 5000;
    std::uint64_t seed = 20241016;
    std::string method = "unconditional";
    double prior_a = 0.001;
    double prior_b = 0.001;
    std::string zero_rule = "equal-tail";
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
};

SimConfig cell_from_options(SimulateOptions const& o)
{
    SimConfig c;
    c.n = o.n;
    c.lambda_true = o.lambda;
    c.truncation_time = o.t;
    c.alpha = o.alpha;
    c.replications = o.replications;
    c.seed = o.seed;
    c.method = method_from_string(o.method);
    if (c.method == Method::bayes)
        c.prior = GammaPrior(o.prior_a, o.prior_b);
    c.zero_rule = zero_rule_from_string(o.zero_rule);
    return c;
}

// Config file: a JSON array of cells; omitted keys fall back to the flags.
std::vector<SimConfig> cells_from_file(SimulateOptions const& defaults)
{
    std::ifstream in(defaults.config_path);
    if (!in)
        throw ValidationError("cannot read config file '" + defaults.config_path + "'");
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (json::parse_error const& e)
    {
        throw ValidationError(std::string("malformed config file: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw ValidationError("config file must hold a non-empty JSON array of cells");
    std::vector<SimConfig> cells;
    for (auto const& item : doc)
    {
        SimulateOptions o = defaults;
        o.n = item.value("n", o.n);
        o.lambda = item.value("lambda", o.lambda);
        o.t = item.value("T", o.t);
        o.alpha = item.value("alpha", o.alpha);
        o.replications = item.value("replications", o.replications);
        o.seed = item.value("seed", o.seed);
        o.method = item.value("method", o.method);
        o.prior_a = item.value("prior_a", o.prior_a);
        o.prior_b = item.value("prior_b", o.prior_b);
        o.zero_rule = item.value("zero_rule", o.zero_rule);
        cells.push_back(cell_from_options(o));
    }
    return cells;
}

int run_simulate(SimulateOptions const& o)
{
    std::vector<SimConfig> cells;
    if (o.paper_tables)
    {
        for (auto m : {Method::unconditional, Method::conditional, Method::bayes})
        {
            auto design = paper_design(m, o.seed, o.replications);
            cells.insert(cells.end(), design.begin(), design.end());
        }
    }
    else if (!o.config_path.empty())
    {
        cells = cells_from_file(o);
    }
    else
    {
        cells.push_back(cell_from_options(o));
    }
    for (auto const& c : cells)
        c.validate();
    if (o.format != "csv" && o.format != "json")
        throw UsageError("--format must be csv or json");

    auto const results = run_grid(cells, thread_override(o.threads));

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out_path.empty())
    {
        file.open(o.out_path);
        if (!file)
            throw ValidationError("cannot write '" + o.out_path + "'");
        out = &file;
    }
    if (o.format == "csv")
        io::write_results_csv(*out, results);
    else
        io::write_results_json(*out, results);

    int failed = 0;
    for (auto const& cell : results)
    {
        if (!cell.error.empty())
        {
            ++failed;
            std::cerr << "cell (" << to_string(cell.config.method)
                      << ", n=" << cell.config.n
                      << ", lambda=" << cell.config.lambda_true
                      << ", T=" << cell.config.truncation_time
                      << ") failed: " << cell.error << '\n';
        }
    }
    return failed == 0 ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact interval estimation of the exponential rate from "
                 "time-truncated (type-I censored) samples"};
    app.require_subcommand(1);

    std::string sample_path;
    double alpha = 0.05;

    auto* estimate = app.add_subcommand("estimate", "Point estimate D/S of a sample file");
    estimate->add_option("input", sample_path, "Sample file (.json or .csv)")->required();

    std::string method = "unconditional";
    std::string zero_rule = "one-sided";
    auto* ci = app.add_subcommand("ci", "Exact confidence interval (JSON)");
    ci->add_option("input", sample_path, "Sample file (.json or .csv)")->required();
    ci->add_option("--alpha", alpha, "1 - confidence level")->capture_default_str();
    ci->add_option("--method", method, "unconditional | conditional")
        ->check(CLI::IsMember({"unconditional", "conditional"}))
        ->capture_default_str();
    ci->add_option("--zero-rule", zero_rule,
                   "Unconditional interval at D=0: one-sided | equal-tail")
        ->capture_default_str();

    double prior_a = 0.001;
    double prior_b = 0.001;
    auto* cri = app.add_subcommand("cri", "Equal-tail Bayesian credible interval (JSON)");
    cri->add_option("input", sample_path, "Sample file (.json or .csv)")->required();
    cri->add_option("--alpha", alpha, "1 - credibility level")->capture_default_str();
    cri->add_option("--prior-a", prior_a, "Gamma prior shape a")->capture_default_str();
    cri->add_option("--prior-b", prior_b, "Gamma prior rate b")->capture_default_str();

    int n = 5;
    double t = 0.5;
    double lambda = 1.0;
    double b = std::nan("");
    std::string what = "cdf";
    std::string grid = "0:5:101";
    auto* dist = app.add_subcommand("dist", "Exact law of the estimator as a CSV curve");
    dist->add_option("--n", n, "Items on test")->capture_default_str();
    dist->add_option("--T", t, "Truncation time")->capture_default_str();
    dist->add_option("--lambda", lambda, "True rate (cdf, pdf)")->capture_default_str();
    dist->add_option("--b", b, "Fixed estimate value (cdf-in-lambda)");
    dist->add_option("--what", what, "cdf | pdf | cdf-in-lambda")
        ->check(CLI::IsMember({"cdf", "pdf", "cdf-in-lambda"}))
        ->capture_default_str();
    dist->add_option("--grid", grid, "start:stop:count or v1,v2,...")->capture_default_str();

    std::string model;
    auto* joint = app.add_subcommand("joint-set",
                                     "Boundary of the D=0 joint confidence set (CSV)");
    joint->add_option("--model", model,
                      "two-param-exponential | weibull | generalized-exponential")
        ->required();
    joint->add_option("--n", n, "Items on test")->capture_default_str();
    joint->add_option("--T", t, "Truncation time")->capture_default_str();
    joint->add_option("--alpha", alpha, "1 - confidence level")->capture_default_str();
    joint->add_option("--grid", grid, "Axis grid: mu for the location model, beta otherwise")
        ->required();

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage study");
    simulate->add_option("--config", sim.config_path, "JSON array of cells");
    simulate->add_flag("--paper-tables", sim.paper_tables,
                       "Run the full 24-cell design for all three methods");
    simulate->add_option("--n", sim.n)->capture_default_str();
    simulate->add_option("--lambda", sim.lambda)->capture_default_str();
    simulate->add_option("--T", sim.t)->capture_default_str();
    simulate->add_option("--alpha", sim.alpha)->capture_default_str();
    simulate->add_option("--reps", sim.replications, "Replications per cell")
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed)->capture_default_str();
    simulate->add_option("--method", sim.method, "unconditional | conditional | bayes")
        ->check(CLI::IsMember({"unconditional", "conditional", "bayes"}))
        ->capture_default_str();
    simulate->add_option("--prior-a", sim.prior_a)->capture_default_str();
    simulate->add_option("--prior-b", sim.prior_b)->capture_default_str();
    simulate->add_option("--zero-rule", sim.zero_rule,
                         "Unconditional interval at D=0: one-sided | equal-tail")
        ->capture_default_str();
    simulate->add_option("--out", sim.out_path, "Output file (default stdout)");
    simulate->add_option("--format", sim.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    simulate->add_option("--threads", sim.threads,
                         "Worker threads (default: TTE_THREADS or all cores)");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (*estimate)
            print_estimate(sample_path);
        else if (*ci)
            print_ci(sample_path, alpha, method, zero_rule);
        else if (*cri)
            print_cri(sample_path, alpha, prior_a, prior_b);
        else if (*dist)
            print_dist(n, t, lambda, b, what, grid);
        else if (*joint)
            print_joint_set(model, n, t, alpha, grid);
        else if (*simulate)
            return run_simulate(sim);
    }
    catch (UsageError const& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    catch (UndefinedMethodError const& e)
    {
        std::cerr << "error: method undefined for D=0: " << e.what() << '\n';
        return kUndefinedMethod;
    }
    catch (ValidationError const& e)
    {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    }
    catch (DomainError const& e)
    {
        std::cerr << "domain error: " << e.what() << '\n';
        return kValidation;
    }
    catch (Error const& e)
    {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}
