#include "lcd/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lcd/quadrature.hpp"

namespace lcd {

std::vector<double> Density1D::sample(std::size_t n, RandomGenerator& rng) const {
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(rng);
    return out;
}

Moments1D Density1D::moments() const {
    QuadOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-12;
    auto grid = breakpoints();
    double m1 = integrate_cells([this](double x) { return x * evaluate(x); }, grid, opts).value;
    double m2 =
        integrate_cells([this](double x) { return x * x * evaluate(x); }, grid, opts).value;
    return {m1, m2 - m1 * m1};
}

// --- PiecewiseLogLinear1D ---------------------------------------------------

PiecewiseLogLinear1D::PiecewiseLogLinear1D(std::vector<double> knots,
                                           std::vector<double> logvals, double concavity_tol)
    : knots_(std::move(knots)), logvals_(std::move(logvals)) {
    if (knots_.size() < 2 || knots_.size() != logvals_.size())
        throw std::invalid_argument("PiecewiseLogLinear1D: need >= 2 knots with matching logvals");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        if (!(knots_[i] < knots_[i + 1]))
            throw std::invalid_argument("PiecewiseLogLinear1D: knots must be strictly increasing");
    for (double v : logvals_)
        if (!std::isfinite(v))
            throw std::invalid_argument("PiecewiseLogLinear1D: logvals must be finite");

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < knots_.size(); ++j) {
        double sl = (logvals_[j] - logvals_[j - 1]) / (knots_[j] - knots_[j - 1]);
        double sr = (logvals_[j + 1] - logvals_[j]) / (knots_[j + 1] - knots_[j]);
        worst = std::max(worst, sr - sl);
    }
    if (knots_.size() > 2 && worst > concavity_tol) {
        std::ostringstream os;
        os << "PiecewiseLogLinear1D: log-density not concave, max slope increase " << worst;
        throw std::invalid_argument(os.str());
    }

    // normalize: subtract log of the integral
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
        double dx = knots_[j + 1] - knots_[j];
        total += dx * std::exp(logvals_[j]) * exp_moment0(logvals_[j + 1] - logvals_[j]);
    }
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("PiecewiseLogLinear1D: non-normalizable logvals");
    log_normalizer_ = -std::log(total);
    for (auto& v : logvals_) v += log_normalizer_;

    seg_mass_.resize(knots_.size() - 1);
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
        double dx = knots_[j + 1] - knots_[j];
        seg_mass_[j] = dx * std::exp(logvals_[j]) * exp_moment0(logvals_[j + 1] - logvals_[j]);
    }
}

PiecewiseLogLinear1D PiecewiseLogLinear1D::uniform(double a, double b) {
    return PiecewiseLogLinear1D({a, b}, {0.0, 0.0});
}

double PiecewiseLogLinear1D::log_density(double x) const {
    if (x < knots_.front() || x > knots_.back())
        return -std::numeric_limits<double>::infinity();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t j = (it == knots_.end()) ? knots_.size() - 2 : (it - knots_.begin()) - 1;
    double t = (x - knots_[j]) / (knots_[j + 1] - knots_[j]);
    return (1.0 - t) * logvals_[j] + t * logvals_[j + 1];
}

double PiecewiseLogLinear1D::evaluate(double x) const {
    double lv = log_density(x);
    return std::isfinite(lv) ? std::exp(lv) : 0.0;
}

std::pair<double, double> PiecewiseLogLinear1D::support() const {
    return {knots_.front(), knots_.back()};
}

double PiecewiseLogLinear1D::sample_one(RandomGenerator& rng) const {
    double u = rng.uniform();
    // locate segment by cumulative mass
    std::size_t j = 0;
    double acc = 0.0;
    for (; j + 1 < seg_mass_.size(); ++j) {
        if (u <= acc + seg_mass_[j]) break;
        acc += seg_mass_[j];
    }
    double v = (u - acc) / seg_mass_[j];
    v = std::min(std::max(v, 0.0), 1.0);
    double h = logvals_[j + 1] - logvals_[j];
    double t = (std::fabs(h) < 1e-14) ? v : std::log1p(v * std::expm1(h)) / h;
    return knots_[j] + t * (knots_[j + 1] - knots_[j]);
}

Moments1D PiecewiseLogLinear1D::moments() const {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
        double a = knots_[j], dx = knots_[j + 1] - a;
        double h = logvals_[j + 1] - logvals_[j];
        double w = dx * std::exp(logvals_[j]);
        double e0 = exp_moment0(h), e1 = exp_moment1(h), e2 = exp_moment2(h);
        m1 += w * (a * e0 + dx * e1);
        m2 += w * (a * a * e0 + 2.0 * a * dx * e1 + dx * dx * e2);
    }
    return {m1, m2 - m1 * m1};
}

double PiecewiseLogLinear1D::max_concavity_violation() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < knots_.size(); ++j) {
        double sl = (logvals_[j] - logvals_[j - 1]) / (knots_[j] - knots_[j - 1]);
        double sr = (logvals_[j + 1] - logvals_[j]) / (knots_[j + 1] - knots_[j]);
        worst = std::max(worst, sr - sl);
    }
    return worst;
}

PiecewiseLogLinear1D PiecewiseLogLinear1D::affine_pushforward(double a, double b) const {
    if (a == 0.0) throw std::invalid_argument("affine_pushforward: a must be nonzero");
    std::vector<double> k(knots_.size()), lv(logvals_.size());
    double la = std::log(std::fabs(a));
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        k[i] = a * knots_[i] + b;
        lv[i] = logvals_[i] - la;
    }
    if (a < 0.0) {
        std::reverse(k.begin(), k.end());
        std::reverse(lv.begin(), lv.end());
    }
    return PiecewiseLogLinear1D(std::move(k), std::move(lv), 1e-6);
}

PiecewiseLogLinear1D construct_normalized(std::vector<double> knots, std::vector<double> logvals,
                                          double concavity_tol) {
    return PiecewiseLogLinear1D(std::move(knots), std::move(logvals), concavity_tol);
}

PiecewiseLogLinear1D approximate_log_density(const std::function<double(double)>& logf, double a,
                                             double b, int m) {
    if (m < 2) throw std::invalid_argument("approximate_log_density: need m >= 2 knots");
    std::vector<double> knots(m), lv(m);
    for (int i = 0; i < m; ++i) {
        knots[i] = a + (b - a) * i / (m - 1);
        lv[i] = logf(knots[i]);
    }
    return PiecewiseLogLinear1D(std::move(knots), std::move(lv), 1e-8);
}

// --- SemicirclePerturbation1D -----------------------------------------------

SemicirclePerturbation1D::SemicirclePerturbation1D(Variant variant, double r, double eps,
                                                   std::vector<std::uint8_t> alpha)
    : variant_(variant), r_(r), eps_(eps), alpha_(std::move(alpha)) {
    if (!(r > 0.0)) throw std::invalid_argument("SemicirclePerturbation1D: r must be > 0");
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("SemicirclePerturbation1D: eps must lie in (0,1)");
    if (alpha_.empty()) throw std::invalid_argument("SemicirclePerturbation1D: empty alpha");
    int K = pair_count();
    if (variant_ == Variant::raised) {
        theta1_ = std::asin(eps_);
        q_ = eps_ * eps_;
    } else {
        theta1_ = std::asin(std::sqrt(eps_));
        q_ = eps_;
    }
    if (2.0 * K * theta1_ > M_PI / 2.0 + 1e-12)
        throw std::invalid_argument("SemicirclePerturbation1D: arcs exceed the quarter circle");
    if (variant_ == Variant::raised) {
        double seg = theta1_ - eps_ * std::sqrt(1.0 - q_);  // theta1 - sin*cos
        base_ = (1.0 - 0.5 * M_PI * r_ * r_ + K * r_ * r_ * seg) / (2.0 * r_);
        half_width_ = r_;
        if (!(base_ > 0.0))
            throw std::invalid_argument("SemicirclePerturbation1D: raised constant not positive");
    } else {
        base_ = -r_ * std::cos(2.0 * K * theta1_);
        half_width_ = r_ * std::sin(2.0 * K * theta1_);
    }
    fmax_ = base_ + r_;
}

std::pair<double, double> SemicirclePerturbation1D::support() const {
    return {-half_width_, half_width_};
}

std::vector<double> SemicirclePerturbation1D::breakpoints() const {
    int K = pair_count();
    std::vector<double> bp;
    bp.reserve(2 * K + 4);
    for (int k = K; k >= 0; --k) bp.push_back(-r_ * std::sin(2.0 * k * theta1_));
    for (int k = 1; k <= K; ++k) bp.push_back(r_ * std::sin(2.0 * k * theta1_));
    if (variant_ == Variant::raised) {
        bp.insert(bp.begin(), -r_);
        bp.push_back(r_);
    }
    return bp;
}

double SemicirclePerturbation1D::evaluate(double x) const {
    double ax = std::fabs(x);
    if (ax > half_width_) return 0.0;
    double arc = std::sqrt(std::max(0.0, r_ * r_ - x * x));
    int K = pair_count();
    double edge = r_ * std::sin(2.0 * K * theta1_);
    if (ax >= edge) return base_ + arc;  // raised variant outside the perturbed span
    double th = std::asin(std::min(ax / r_, 1.0));
    int k = std::min(K, static_cast<int>(std::floor(th / (2.0 * theta1_))) + 1);
    bool use_arc = (x >= 0.0) ? (alpha_[k - 1] == 1) : (alpha_[k - 1] == 0);
    if (use_arc) return base_ + arc;
    double sq = std::sqrt(1.0 - q_);
    double xm = r_ * sq * std::sin((2.0 * k - 1.0) * theta1_);
    double yk = r_ * sq * std::cos((2.0 * k - 1.0) * theta1_);
    double chord = ((1.0 - q_) * r_ * r_ - xm * ax) / yk;
    return base_ + chord;
}

double SemicirclePerturbation1D::sample_one(RandomGenerator& rng) const {
    for (long it = 0; it < 100000000L; ++it) {
        double x = rng.uniform(-half_width_, half_width_);
        double u = rng.uniform(0.0, fmax_);
        if (u <= evaluate(x)) return x;
    }
    throw std::runtime_error("SemicirclePerturbation1D: rejection sampling failed");
}

Moments1D SemicirclePerturbation1D::moments() const { return Density1D::moments(); }

double SemicirclePerturbation1D::integral() const {
    QuadOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-12;
    return integrate_cells([this](double x) { return evaluate(x); }, breakpoints(), opts).value;
}

// --- ConvexBodyUniform -------------------------------------------------------

namespace {
double min_offset_of(const std::vector<Halfspace>& hs) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) m = std::min(m, h.offset);
    return m;
}

void validate_halfspaces(int dim, const std::vector<Halfspace>& hs) {
    for (const auto& h : hs) {
        if (static_cast<int>(h.normal.size()) != dim)
            throw std::invalid_argument("ConvexBodyUniform: normal dimension mismatch");
        if (std::fabs(norm(h.normal) - 1.0) > 1e-12)
            throw std::invalid_argument("ConvexBodyUniform: normals must be unit vectors");
    }
}
}  // namespace

ConvexBodyUniform::ConvexBodyUniform(int dim, double radius, std::vector<Halfspace> halfspaces,
                                     double exact_volume)
    : dim_(dim), radius_(radius), halfspaces_(std::move(halfspaces)), volume_(exact_volume),
      volume_exact_(true) {
    if (dim_ < 1) throw std::invalid_argument("ConvexBodyUniform: dim must be >= 1");
    if (!(radius_ > 0.0)) throw std::invalid_argument("ConvexBodyUniform: radius must be > 0");
    if (!(volume_ > 0.0)) throw std::invalid_argument("ConvexBodyUniform: volume must be > 0");
    validate_halfspaces(dim_, halfspaces_);
    height_ = 1.0 / volume_;
    min_offset_ = min_offset_of(halfspaces_);
}

ConvexBodyUniform ConvexBodyUniform::with_mc_volume(int dim, double radius,
                                                    std::vector<Halfspace> halfspaces,
                                                    std::size_t n_samples, std::uint64_t seed) {
    validate_halfspaces(dim, halfspaces);
    double ball = unit_ball_volume(dim) * std::pow(radius, dim);
    RandomGenerator rng(seed);
    double min_off = min_offset_of(halfspaces);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Vec x = sample_uniform_ball(dim, radius, rng);
        bool in = true;
        if (norm(x) > min_off) {
            for (const auto& h : halfspaces)
                if (dot(h.normal, x) > h.offset) {
                    in = false;
                    break;
                }
        }
        if (in) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    if (!(p > 0.0)) throw std::runtime_error("ConvexBodyUniform: empty body in MC volume");
    ConvexBodyUniform out(dim, radius, std::move(halfspaces), ball * p);
    out.volume_exact_ = false;
    out.volume_std_error_ = ball * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return out;
}

bool ConvexBodyUniform::contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("ConvexBodyUniform: point dimension mismatch");
    double nx = norm(x);
    if (nx > radius_) return false;
    if (nx <= min_offset_) return true;  // Cauchy-Schwarz: b^T x <= ||x|| for unit b
    for (const auto& h : halfspaces_)
        if (dot(h.normal, x) > h.offset) return false;
    return true;
}

double ConvexBodyUniform::evaluate(const Vec& x) const { return contains(x) ? height_ : 0.0; }

std::vector<Vec> ConvexBodyUniform::sample(std::size_t n, RandomGenerator& rng) const {
    std::vector<Vec> out;
    out.reserve(n);
    std::size_t budget = n * static_cast<std::size_t>(1000000);
    std::size_t used = 0;
    while (out.size() < n) {
        if (++used > budget)
            throw std::runtime_error("ConvexBodyUniform: rejection budget exhausted (degenerate body)");
        Vec x = sample_uniform_ball(dim_, radius_, rng);
        if (contains(x)) out.push_back(std::move(x));
    }
    return out;
}

MomentsNd ConvexBodyUniform::moments_mc(std::size_t n_samples, std::uint64_t seed) const {
    RandomGenerator rng(seed);
    int d = dim_;
    Vec sum(d, 0.0), sum_sq(d, 0.0);
    std::vector<Vec> sum_xx(d, Vec(d, 0.0)), sum_xx2(d, Vec(d, 0.0));
    for (std::size_t i = 0; i < n_samples; ++i) {
        Vec x;
        // inline rejection
        for (;;) {
            x = sample_uniform_ball(d, radius_, rng);
            if (contains(x)) break;
        }
        for (int a = 0; a < d; ++a) {
            sum[a] += x[a];
            sum_sq[a] += x[a] * x[a];
            for (int b = a; b < d; ++b) {
                double v = x[a] * x[b];
                sum_xx[a][b] += v;
                sum_xx2[a][b] += v * v;
            }
        }
    }
    MomentsNd out;
    out.n_samples = n_samples;
    out.seed = seed;
    out.mean.resize(d);
    double nn = static_cast<double>(n_samples);
    for (int a = 0; a < d; ++a) out.mean[a] = sum[a] / nn;
    out.covariance.assign(d, Vec(d, 0.0));
    double mean_se = 0.0, cov_se = 0.0;
    for (int a = 0; a < d; ++a) {
        double var_a = sum_sq[a] / nn - out.mean[a] * out.mean[a];
        mean_se = std::max(mean_se, std::sqrt(std::max(0.0, var_a) / nn));
        for (int b = a; b < d; ++b) {
            double m2 = sum_xx[a][b] / nn;
            double cov = m2 - out.mean[a] * out.mean[b];
            out.covariance[a][b] = out.covariance[b][a] = cov;
            double v4 = sum_xx2[a][b] / nn - m2 * m2;
            cov_se = std::max(cov_se, std::sqrt(std::max(0.0, v4) / nn));
        }
    }
    out.mean_std_error = mean_se;
    out.cov_std_error = cov_se;
    return out;
}

}  // namespace lcd
