#include "lcd/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcd {

void validate(const EnvelopeSpec& spec) {
    if (spec.d < 1) throw std::invalid_argument("EnvelopeSpec: d must be >= 1");
    if (!(spec.A > 0.0)) throw std::invalid_argument("EnvelopeSpec: A must be > 0");
    if (!(spec.eta > 0.0 && spec.eta < 1.0))
        throw std::invalid_argument("EnvelopeSpec: eta must lie in (0,1)");
    if (spec.xi < 0.0) throw std::invalid_argument("EnvelopeSpec: xi must be >= 0");
}

double envelope_value(const EnvelopeSpec& spec, double x_norm) {
    validate(spec);
    if (spec.variant == EnvelopeVariant::standardized)
        return std::exp(-spec.A * x_norm + spec.B);
    double root = std::sqrt(1.0 + spec.eta);
    return std::pow(1.0 - spec.eta, -spec.d / 2.0) *
           std::exp(-spec.A * x_norm / root + spec.A * spec.xi / root + spec.B);
}

double envelope_value(const EnvelopeSpec& spec, const Vec& x) {
    if (static_cast<int>(x.size()) != spec.d)
        throw std::invalid_argument("envelope_value: point dimension mismatch");
    return envelope_value(spec, norm(x));
}

Env2Extremal env2_extremal(double x0) {
    if (x0 == 0.0)
        throw std::invalid_argument("env2_extremal: x0 = 0 (the supremum there is infinite)");
    const double lost = 1e-12;
    double a = std::fabs(x0);
    // log f(x) = -log a - (a - x)/a on (-inf, a]; truncate where the mass
    // below t, e^{-(a-t)/a}, reaches `lost`.
    double t = a * (1.0 + std::log(lost));
    std::vector<double> knots = {t, a};
    std::vector<double> logvals = {-std::log(a) - (a - t) / a, -std::log(a)};
    PiecewiseLogLinear1D f(std::move(knots), std::move(logvals));
    if (x0 < 0.0) f = f.affine_pushforward(-1.0, 0.0);
    return Env2Extremal{std::move(f), (x0 > 0 ? t : -t), lost};
}

Env2Report check_env2_bound(const PiecewiseLogLinear1D& f, double x0) {
    Env2Report rep;
    rep.bound = 1.0 / std::fabs(x0);
    Moments1D m = f.moments();
    const PiecewiseLogLinear1D* use = &f;
    PiecewiseLogLinear1D centered = f;
    if (std::fabs(m.mean) > 1e-6) {
        centered = f.affine_pushforward(1.0, -m.mean);
        rep.mean_shift = -m.mean;
        use = &centered;
    }
    rep.value = use->evaluate(x0);
    rep.slack = rep.bound - rep.value;
    rep.ok = rep.value <= rep.bound + 1e-6;
    return rep;
}

EnvelopeFit fit_envelope_constants(int d, const std::vector<ProbePoint>& probes) {
    if (probes.empty())
        throw std::invalid_argument("fit_envelope_constants: empty probe set (empty generator?)");
    auto b_of = [&](double A) {
        double b = -std::numeric_limits<double>::infinity();
        for (const auto& p : probes) b = std::max(b, p.logf + A * p.radius);
        return b;
    };
    // log envelope mass ~ B(A) - d log A (up to an A-free constant); convex in A
    auto obj = [&](double A) { return b_of(A) - d * std::log(A); };
    double lo = 1e-3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (obj(m1) < obj(m2))
            hi = m2;
        else
            lo = m1;
    }
    EnvelopeFit fit;
    fit.A_hat = 0.5 * (lo + hi);
    fit.B_hat = b_of(fit.A_hat);
    fit.probe_count = probes.size();
    return fit;
}

std::vector<ProbePoint> probe_density(const Density1D& f, int trials, RandomGenerator& rng) {
    auto [a, b] = f.support();
    std::vector<ProbePoint> out;
    out.reserve(trials);
    for (int i = 0; i < trials; ++i) {
        double x = (i % 2 == 0) ? rng.uniform(a, b) : rng.uniform(0.0, 1.0) * (b - a) + a;
        double v = f.evaluate(x);
        if (v > 0.0) out.push_back({std::fabs(x), std::log(v)});
    }
    // support endpoints matter: the flattest tails bind there
    for (double x : {a, b}) {
        double v = f.evaluate(x);
        if (v > 0.0) out.push_back({std::fabs(x), std::log(v)});
    }
    return out;
}

std::vector<ProbePoint> probe_body(const ConvexBodyUniform& f, int trials, RandomGenerator& rng) {
    std::vector<ProbePoint> out;
    out.reserve(trials);
    auto pts = f.sample(static_cast<std::size_t>(trials), rng);
    for (const auto& x : pts) out.push_back({norm(x), std::log(f.height())});
    return out;
}

EnvelopeFit estimate_envelope_constants(int d, const std::vector<const Density1D*>& generator,
                                        int trials, RandomGenerator& rng) {
    if (d != 1) throw std::invalid_argument("estimate_envelope_constants: 1-D corpus needs d = 1");
    if (generator.empty())
        throw std::invalid_argument("estimate_envelope_constants: empty generator");
    std::vector<ProbePoint> probes;
    for (const Density1D* f : generator) {
        auto p = probe_density(*f, trials, rng);
        probes.insert(probes.end(), p.begin(), p.end());
    }
    return fit_envelope_constants(d, probes);
}

EnvelopeFit estimate_envelope_constants(int d,
                                        const std::vector<const ConvexBodyUniform*>& generator,
                                        int trials, RandomGenerator& rng) {
    if (d < 2) throw std::invalid_argument("estimate_envelope_constants: body corpus needs d >= 2");
    if (generator.empty())
        throw std::invalid_argument("estimate_envelope_constants: empty generator");
    std::vector<ProbePoint> probes;
    for (const ConvexBodyUniform* f : generator) {
        auto p = probe_body(*f, trials, rng);
        probes.insert(probes.end(), p.begin(), p.end());
    }
    return fit_envelope_constants(d, probes);
}

}  // namespace lcd
