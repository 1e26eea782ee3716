#pragma once

// Integration helpers shared by unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "tte/exact_dist.hpp"

namespace tte::check {

/// Integral of the density over [1/(nT), inf), done in u = 1/x on (0, nT]
/// with breakpoints at every offset (n-d+k)T/d where the integrand kinks.
/// Between breakpoints the integrand is analytic, so a shallow adaptive
/// depth suffices; deeper splitting only chases rounding noise.
inline double pdf_mass(ExactDist const& dist)
{
    int const n = dist.n();
    double const t = dist.truncation_time();
    std::set<double> cuts{0.0, n * t};
    for (int d = 1; d <= n; ++d)
        for (int j = n - d; j <= n; ++j)
            cuts.insert(j * t / d);
    auto integrand = [&](double u) {
        if (u <= 0)
            return 0.0;
        return dist.pdf(1 / u) / (u * u);
    };
    std::vector<double> const points(cuts.begin(), cuts.end());
    double total = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
    {
        if (points[i + 1] > points[i])
            total += oracle::integrate(integrand, points[i], points[i + 1], 1e-10, 4);
    }
    return total;
}

/// Upper bound on sup_x |F(x) - F_n(x)| for the empirical cdf of `sorted`,
/// evaluating F only at `knots` order statistics. Between consecutive knots
/// both functions are monotone, so the bound is exact up to the knot spacing.
template <class Cdf>
double ks_upper_bound(std::vector<double> const& sorted, Cdf const& cdf, int knots)
{
    auto const m = sorted.size();
    std::vector<double> xs;
    xs.push_back(0.0);
    for (int i = 1; i <= knots; ++i)
        xs.push_back(sorted[std::min(m - 1, m * i / knots - 1)]);
    xs.push_back(sorted.back() * 2 + 1);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto ecdf = [&](double x) {
        return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x)
                                   - sorted.begin())
               / static_cast<double>(m);
    };
    auto ecdf_left = [&](double x) {
        return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x)
                                   - sorted.begin())
               / static_cast<double>(m);
    };
    double worst = 0;
    double f_prev = cdf(xs[0]);
    double e_prev = ecdf(xs[0]);
    worst = std::fabs(f_prev - e_prev);
    for (std::size_t i = 1; i < xs.size(); ++i)
    {
        double const f = cdf(xs[i]);
        double const e = ecdf(xs[i]);
        // On (x_{i-1}, x_i): F in [f_prev, f], F_n in [e_prev, ecdf_left(x_i)].
        worst = std::max({worst, std::fabs(f - e), f - e_prev, ecdf_left(xs[i]) - f_prev});
        f_prev = f;
        e_prev = e;
    }
    return worst;
}

}  // namespace tte::check
