#pragma once

#include <vector>

#include "lcd/density.hpp"

namespace lcd {

enum class EnvelopeVariant { standardized, tilde_class };

// Envelope e^{-A||x|| + B} for the standardized class, and its enlargement
// (1-eta)^{-d/2} exp{-A||x||/(1+eta)^{1/2} + A xi/(1+eta)^{1/2} + B} for the
// class with mean norm <= xi and covariance eigenvalues in [1-eta, 1+eta].
struct EnvelopeSpec {
    int d = 1;
    double A = 1.0;
    double B = 0.0;
    double xi = 0.0;
    double eta = 0.5;
    EnvelopeVariant variant = EnvelopeVariant::standardized;
};

void validate(const EnvelopeSpec& spec);

double envelope_value(const EnvelopeSpec& spec, double x_norm);
double envelope_value(const EnvelopeSpec& spec, const Vec& x);

// The extremal mean-zero density attaining sup f(x0) = 1/|x0|: for x0 > 0,
// f(x) = (1/x0) e^{-(x0-x)/x0} on (-inf, x0], mirrored for x0 < 0.  Log-linear,
// so exact on two knots; the tail is truncated where the remaining mass drops
// below 1e-12 (truncation recorded).
struct Env2Extremal {
    PiecewiseLogLinear1D density;
    double truncation_point;
    double lost_mass;
};

Env2Extremal env2_extremal(double x0);

struct Env2Report {
    bool ok = false;
    double value = 0.0;       // f(x0) after re-centering
    double bound = 0.0;       // 1/|x0|
    double slack = 0.0;       // bound - value
    double mean_shift = 0.0;  // applied re-centering
};

// Checks f(x0) <= 1/|x0| + 1e-6 for the (re-centered) density.
Env2Report check_env2_bound(const PiecewiseLogLinear1D& f, double x0);

// --- empirical envelope constants -------------------------------------------

// A probe is one evaluation of a corpus density: its distance from the origin
// and the log-density there (-inf probes are skipped).
struct ProbePoint {
    double radius;
    double logf;
};

struct EnvelopeFit {
    double A_hat = 0.0;
    double B_hat = 0.0;
    bool certified = false;  // always false: fitted constants, not proved ones
    std::size_t probe_count = 0;
};

// Smallest-mass envelope over the probes: B(A) = max(logf + A r), A chosen to
// minimize B(A) - d log A (the log of the envelope's total mass), by ternary
// search on the convex objective.
EnvelopeFit fit_envelope_constants(int d, const std::vector<ProbePoint>& probes);

std::vector<ProbePoint> probe_density(const Density1D& f, int trials, RandomGenerator& rng);
std::vector<ProbePoint> probe_body(const ConvexBodyUniform& f, int trials, RandomGenerator& rng);

EnvelopeFit estimate_envelope_constants(int d, const std::vector<const Density1D*>& generator,
                                        int trials, RandomGenerator& rng);
EnvelopeFit estimate_envelope_constants(int d,
                                        const std::vector<const ConvexBodyUniform*>& generator,
                                        int trials, RandomGenerator& rng);

}  // namespace lcd
