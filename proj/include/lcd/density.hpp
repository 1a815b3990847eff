#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lcd/geometry.hpp"
#include "lcd/rng.hpp"

namespace lcd {

struct Moments1D {
    double mean = 0.0;
    double variance = 0.0;
};

// One-dimensional density with a compact support, piecewise-analytic between
// breakpoints.  Everything downstream (metrics quadrature, sampling checks)
// only needs this surface.
class Density1D {
public:
    virtual ~Density1D() = default;

    virtual double evaluate(double x) const = 0;

    // closed support interval [a, b]
    virtual std::pair<double, double> support() const = 0;

    // sorted kink/arc boundaries, including the support endpoints
    virtual std::vector<double> breakpoints() const = 0;

    virtual double sample_one(RandomGenerator& rng) const = 0;

    std::vector<double> sample(std::size_t n, RandomGenerator& rng) const;

    // mean and variance; overridden where exact segment integrals exist
    virtual Moments1D moments() const;
};

// log f piecewise linear on strictly increasing knots, f = 0 outside
// [knots.front(), knots.back()].  Normalized to integrate to one at
// construction: the additive constant is reported via log_normalizer().
class PiecewiseLogLinear1D final : public Density1D {
public:
    // Throws if knots are not strictly increasing, logvals are not finite,
    // or concavity is violated by more than concavity_tol.
    PiecewiseLogLinear1D(std::vector<double> knots, std::vector<double> logvals,
                         double concavity_tol = 1e-12);

    static PiecewiseLogLinear1D uniform(double a, double b);

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& logvals() const { return logvals_; }
    double log_normalizer() const { return log_normalizer_; }

    double evaluate(double x) const override;
    double log_density(double x) const;  // -inf outside support
    std::pair<double, double> support() const override;
    std::vector<double> breakpoints() const override { return knots_; }
    double sample_one(RandomGenerator& rng) const override;
    Moments1D moments() const override;  // exact segment integrals

    // max over interior knots of the second difference of logvals (<= 0 for
    // concave inputs up to the construction tolerance)
    double max_concavity_violation() const;

    // pushforward under y = a x + b, a != 0 (exact: knots map, logvals shift
    // by -log|a|)
    PiecewiseLogLinear1D affine_pushforward(double a, double b) const;

private:
    std::vector<double> knots_;
    std::vector<double> logvals_;
    double log_normalizer_ = 0.0;
    std::vector<double> seg_mass_;  // per-segment probability mass
};

// The semicircle perturbation constructions.  Both variants share the same
// skeleton: on the support the density is base + piece(x), where piece is
// the arc sqrt(r^2 - x^2) or the chord joining the arc's endpoints over
// paired intervals R_{k,0} = (r sin t_{2k-2}, r sin t_{2k}), R_{k,1} = -R_{k,0},
// t_j = j * theta1.
//   - Raised (minimax lower bound, d=1): theta1 = arcsin(eps), base
//     c_{r,K,eps} > 0, support [-r, r].
//   - Entropy (bracketing lower bound, d=1): theta1 = arcsin(sqrt(eps)),
//     base -r cos t_{2K}, support [-r sin t_{2K}, r sin t_{2K}].
// alpha_k = 1 keeps the arc on R_{k,0} and the chord on R_{k,1}; alpha_k = 0
// swaps the two.
class SemicirclePerturbation1D final : public Density1D {
public:
    enum class Variant { raised, entropy };

    SemicirclePerturbation1D(Variant variant, double r, double eps, std::vector<std::uint8_t> alpha);

    Variant variant() const { return variant_; }
    double r() const { return r_; }
    double eps() const { return eps_; }
    int pair_count() const { return static_cast<int>(alpha_.size()); }
    const std::vector<std::uint8_t>& alpha() const { return alpha_; }
    double base_constant() const { return base_; }
    double theta1() const { return theta1_; }

    double evaluate(double x) const override;
    std::pair<double, double> support() const override;
    std::vector<double> breakpoints() const override;
    double sample_one(RandomGenerator& rng) const override;
    Moments1D moments() const override;  // adaptive quadrature at 1e-12

    double integral() const;  // quadrature check of the normalization

private:
    Variant variant_;
    double r_;
    double eps_;
    std::vector<std::uint8_t> alpha_;
    double theta1_;
    double q_;     // sin^2(theta1): eps^2 (raised) or eps (entropy)
    double base_;  // additive constant on the support
    double half_width_;
    double fmax_;  // for rejection sampling
};

struct MomentsNd {
    Vec mean;
    std::vector<Vec> covariance;
    double mean_std_error = 0.0;   // max over coordinates
    double cov_std_error = 0.0;    // max over entries
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

// Uniform density on (closed ball of given radius) intersect (halfspaces).
// Value is height = 1/volume on the body and 0 outside.
class ConvexBodyUniform {
public:
    // volume supplied exactly (e.g. ball minus disjoint caps via the cap
    // formula)
    ConvexBodyUniform(int dim, double radius, std::vector<Halfspace> halfspaces,
                      double exact_volume);

    // volume estimated by Monte Carlo over the enclosing ball
    static ConvexBodyUniform with_mc_volume(int dim, double radius,
                                            std::vector<Halfspace> halfspaces,
                                            std::size_t n_samples, std::uint64_t seed);

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    double volume() const { return volume_; }
    double height() const { return height_; }
    bool volume_is_exact() const { return volume_exact_; }
    double volume_std_error() const { return volume_std_error_; }

    bool contains(const Vec& x) const;
    double evaluate(const Vec& x) const;

    std::vector<Vec> sample(std::size_t n, RandomGenerator& rng) const;

    MomentsNd moments_mc(std::size_t n_samples, std::uint64_t seed) const;

private:
    int dim_;
    double radius_;
    std::vector<Halfspace> halfspaces_;
    double volume_;
    double height_;
    bool volume_exact_;
    double volume_std_error_ = 0.0;
    double min_offset_;  // points with ||x|| <= min_offset satisfy all constraints
};

// Normalizing constructor for PiecewiseLogLinear1D (shifts logvals so the
// integral is 1 within 1e-12; rejects non-concave input with the max
// violation in the message).
PiecewiseLogLinear1D construct_normalized(std::vector<double> knots, std::vector<double> logvals,
                                          double concavity_tol = 1e-9);

// Piecewise log-linear grid approximation of log f on [a, b] with m knots.
PiecewiseLogLinear1D approximate_log_density(const std::function<double(double)>& logf, double a,
                                             double b, int m);

}  // namespace lcd
