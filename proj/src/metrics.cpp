#include "lcd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcd {

std::string to_string(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::exact_segment: return "exact-segment";
        case DistanceMethod::adaptive_quadrature: return "adaptive-quadrature";
        case DistanceMethod::monte_carlo: return "monte-carlo";
    }
    return "?";
}

namespace {

std::vector<double> merged_grid(const Density1D& f, const Density1D& g) {
    std::vector<double> grid = f.breakpoints();
    std::vector<double> gb = g.breakpoints();
    grid.insert(grid.end(), gb.begin(), gb.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-15; }),
               grid.end());
    return grid;
}

template <typename Integrand>
DistanceResult quad_distance(const Density1D& f, const Density1D& g, const QuadOptions& opts,
                             Integrand&& integrand) {
    QuadResult r = integrate_cells(integrand, merged_grid(f, g), opts);
    return {std::max(0.0, r.value), DistanceMethod::adaptive_quadrature, r.error_estimate,
            std::nullopt};
}

template <typename Integrand>
DistanceResult mc_distance(const ConvexBodyUniform& f, const ConvexBodyUniform& g,
                           const McOptions& opts, Integrand&& h) {
    if (f.dim() != g.dim()) throw std::invalid_argument("distance: dimension mismatch");
    RandomGenerator rng(opts.seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < opts.n_samples; ++i) {
        // draw from the mixture (f+g)/2
        const ConvexBodyUniform& src = (rng.uniform() < 0.5) ? f : g;
        Vec x;
        for (;;) {
            x = sample_uniform_ball(src.dim(), src.radius(), rng);
            if (src.contains(x)) break;
        }
        double fv = f.evaluate(x), gv = g.evaluate(x);
        double m = 0.5 * (fv + gv);
        double v = h(fv, gv) / m;  // m > 0 wherever the mixture puts mass
        sum += v;
        sum2 += v * v;
    }
    double n = static_cast<double>(opts.n_samples);
    double mean = sum / n;
    double var = std::max(0.0, sum2 / n - mean * mean);
    return {std::max(0.0, mean), DistanceMethod::monte_carlo, std::sqrt(var / n), opts.seed};
}

}  // namespace

DistanceResult hellinger_sq(const Density1D& f, const Density1D& g, const QuadOptions& opts) {
    return quad_distance(f, g, opts, [&](double x) {
        double d = std::sqrt(f.evaluate(x)) - std::sqrt(g.evaluate(x));
        return d * d;
    });
}

DistanceResult l2_sq(const Density1D& f, const Density1D& g, const QuadOptions& opts) {
    return quad_distance(f, g, opts, [&](double x) {
        double d = f.evaluate(x) - g.evaluate(x);
        return d * d;
    });
}

DistanceResult l1(const Density1D& f, const Density1D& g, const QuadOptions& opts) {
    return quad_distance(f, g, opts,
                         [&](double x) { return std::fabs(f.evaluate(x) - g.evaluate(x)); });
}

DistanceResult hellinger_sq(const ConvexBodyUniform& f, const ConvexBodyUniform& g,
                            const McOptions& opts) {
    return mc_distance(f, g, opts, [](double fv, double gv) {
        double d = std::sqrt(fv) - std::sqrt(gv);
        return d * d;
    });
}

DistanceResult l2_sq(const ConvexBodyUniform& f, const ConvexBodyUniform& g,
                     const McOptions& opts) {
    return mc_distance(f, g, opts, [](double fv, double gv) {
        double d = fv - gv;
        return d * d;
    });
}

DistanceResult l1(const ConvexBodyUniform& f, const ConvexBodyUniform& g, const McOptions& opts) {
    return mc_distance(f, g, opts, [](double fv, double gv) { return std::fabs(fv - gv); });
}

}  // namespace lcd
