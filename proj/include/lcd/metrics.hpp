#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lcd/density.hpp"
#include "lcd/quadrature.hpp"

namespace lcd {

enum class DistanceMethod { exact_segment, adaptive_quadrature, monte_carlo };

std::string to_string(DistanceMethod m);

struct DistanceResult {
    double value = 0.0;
    DistanceMethod method = DistanceMethod::adaptive_quadrature;
    double abs_error_estimate = 0.0;
    std::optional<std::uint64_t> seed;
};

struct McOptions {
    std::uint64_t seed;  // required: results carry it
    std::size_t n_samples = 1000000;
};

// 1-D distances by adaptive quadrature on the union of both breakpoint grids.
DistanceResult hellinger_sq(const Density1D& f, const Density1D& g, const QuadOptions& opts = {});
DistanceResult l2_sq(const Density1D& f, const Density1D& g, const QuadOptions& opts = {});
DistanceResult l1(const Density1D& f, const Density1D& g, const QuadOptions& opts = {});

// d >= 2 distances by importance-sampled Monte Carlo against the mixture
// (f+g)/2, with the reported standard error as abs_error_estimate.
DistanceResult hellinger_sq(const ConvexBodyUniform& f, const ConvexBodyUniform& g,
                            const McOptions& opts);
DistanceResult l2_sq(const ConvexBodyUniform& f, const ConvexBodyUniform& g,
                     const McOptions& opts);
DistanceResult l1(const ConvexBodyUniform& f, const ConvexBodyUniform& g, const McOptions& opts);

}  // namespace lcd
