#include "lcd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "lcd/quadrature.hpp"

namespace lcd {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double SpherePacking::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double d2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                double t = points[i][k] - points[j][k];
                d2 += t * t;
            }
            best = std::min(best, std::sqrt(d2));
        }
    return best;
}

std::size_t packing_size_lower_bound(int d, double eps) {
    double v = std::sqrt(2.0 * M_PI) * std::sqrt(d - 1.0) / std::sqrt(3.0) *
               std::pow(2.0, -(d - 1)) * std::pow(eps, -(d - 1.0));
    return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

std::size_t packing_size_upper_bound(int d, double eps) {
    double v = std::pow(4.0, d - 1) * M_PI * std::sqrt(d - 1.0) *
               std::pow(15.0, -(d - 1.0) / 2.0) * std::pow(eps, -(d - 1.0));
    return static_cast<std::size_t>(std::floor(v + 1e-9));
}

namespace {

// Hash grid over [-1,1]^d with cell size <= 2*eps/sqrt(d): any two points at
// distance <= 2*eps sit in neighbouring cells, so neighbour scans are
// exhaustive for the separation test.
class SphereGrid {
public:
    SphereGrid(int d, double eps) : d_(d) {
        cell_ = 2.0 * eps / std::sqrt(static_cast<double>(d));
        per_axis_ = static_cast<long>(std::ceil(2.0 / cell_)) + 6;
    }

    long key(const Vec& x) const {
        long k = 0;
        for (int i = 0; i < d_; ++i) {
            long c = static_cast<long>(std::floor((x[i] + 1.0) / cell_)) + 2;
            k = k * per_axis_ + c;
        }
        return k;
    }

    void insert(const std::vector<Vec>& pts, std::size_t idx) {
        cells_[key(pts[idx])].push_back(idx);
    }

    // true if some stored point is within dist of x
    bool has_neighbor_within(const std::vector<Vec>& pts, const Vec& x, double dist) const {
        double d2max = dist * dist;
        std::vector<long> coord(d_);
        for (int i = 0; i < d_; ++i)
            coord[i] = static_cast<long>(std::floor((x[i] + 1.0) / cell_)) + 2;
        int combos = 1;
        for (int i = 0; i < d_; ++i) combos *= 3;
        for (int c = 0; c < combos; ++c) {
            long k = 0;
            int rem = c;
            for (int i = 0; i < d_; ++i) {
                long off = rem % 3 - 1;
                rem /= 3;
                k = k * per_axis_ + (coord[i] + off);
            }
            auto it = cells_.find(k);
            if (it == cells_.end()) continue;
            for (std::size_t idx : it->second) {
                double d2 = 0.0;
                for (int i = 0; i < d_; ++i) {
                    double t = pts[idx][i] - x[i];
                    d2 += t * t;
                }
                if (d2 <= d2max) return true;
            }
        }
        return false;
    }

private:
    int d_;
    double cell_;
    long per_axis_;
    std::unordered_map<long, std::vector<std::size_t>> cells_;
};

std::vector<Vec> saturation_pass(const std::vector<Vec>& proposals,
                                 const std::vector<std::size_t>& order, int d, double eps) {
    SphereGrid grid(d, eps);
    std::vector<Vec> packing;
    for (std::size_t idx : order) {
        if (!grid.has_neighbor_within(packing, proposals[idx], 2.0 * eps)) {
            packing.push_back(proposals[idx]);
            grid.insert(packing, packing.size() - 1);
        }
    }
    return packing;
}

std::vector<Vec> farthest_point_pass(const std::vector<Vec>& proposals, int d, double eps) {
    const std::size_t m = proposals.size();
    std::vector<double> min_d2(m, std::numeric_limits<double>::infinity());
    std::vector<Vec> packing;
    std::size_t next = 0;  // first proposal seeds the traversal
    double sep2 = 4.0 * eps * eps;
    while (true) {
        packing.push_back(proposals[next]);
        const Vec& p = proposals[next];
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double d2 = 0.0;
            for (int k = 0; k < d; ++k) {
                double t = proposals[i][k] - p[k];
                d2 += t * t;
            }
            if (d2 < min_d2[i]) min_d2[i] = d2;
            if (min_d2[i] > best) {
                best = min_d2[i];
                arg = i;
            }
        }
        if (best <= sep2) break;
        next = arg;
    }
    return packing;
}

}  // namespace

SpherePacking greedy_sphere_packing(int d, double eps, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("greedy_sphere_packing: d must be >= 2");
    if (!(eps > 0.0) || eps > 0.5)
        throw std::invalid_argument("greedy_sphere_packing: eps must lie in (0, 1/2]");

    const std::size_t m = static_cast<std::size_t>(100000) * static_cast<std::size_t>(d);
    RandomGenerator rng(seed);
    std::vector<Vec> proposals;
    proposals.reserve(m);
    for (std::size_t i = 0; i < m; ++i) proposals.push_back(rng.unit_vector(d));

    // Farthest-point traversal stalls in symmetric local optima (on S^1 at
    // eps = 1/2 it saturates at the 4-point square while a 5-point packing
    // exists), so a few random-order saturation passes compete with it and
    // the largest maximal packing wins.
    std::vector<Vec> best;
    if (packing_size_upper_bound(d, eps) <= 4000) best = farthest_point_pass(proposals, d, eps);

    const int restarts = 12;
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::uint64_t shuffle_state = seed ^ 0xD1B54A32D192ED03ULL;
    for (int t = 0; t < restarts; ++t) {
        for (std::size_t i = m - 1; i > 0; --i) {
            std::size_t j = splitmix64(shuffle_state) % (i + 1);
            std::swap(order[i], order[j]);
        }
        std::vector<Vec> pk = saturation_pass(proposals, order, d, eps);
        if (pk.size() > best.size()) best = std::move(pk);
    }

    SpherePacking out;
    out.dim = d;
    out.eps = eps;
    out.points = std::move(best);
    out.proposal_count = m;

    // Certify: strict separation and maximality against the proposal set.
    SphereGrid grid(d, eps);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (grid.has_neighbor_within(out.points, out.points[i], 2.0 * eps))
            throw std::runtime_error("greedy_sphere_packing: separation violated");
        grid.insert(out.points, i);
    }
    out.maximal = true;
    for (const Vec& p : proposals) {
        if (!grid.has_neighbor_within(out.points, p, 2.0 * eps)) {
            out.maximal = false;
            break;
        }
    }

    std::size_t lo = packing_size_lower_bound(d, eps);
    std::size_t hi = packing_size_upper_bound(d, eps);
    if (out.points.size() < lo || out.points.size() > hi)
        throw std::runtime_error("greedy_sphere_packing: size outside the packing sandwich");
    return out;
}

double cap_integral(int d, double eps) {
    if (d < 2) throw std::invalid_argument("cap_integral: d must be >= 2");
    if (!(eps > 0.0) || eps > 0.5)
        throw std::invalid_argument("cap_integral: eps must lie in (0, 1/2]");
    double upper = eps * eps - std::pow(eps, 4) / 4.0;
    double p = (d + 1) / 2.0 - 1.0;
    QuadOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-12;
    opts.max_depth = 60;
    return integrate([p](double t) { return std::pow(t, p) / std::sqrt(1.0 - t); }, 0.0, upper,
                     opts)
        .value;
}

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(1.0 + d / 2.0);
}

double cap_volume(int d, double eps) {
    return 0.5 * std::pow(M_PI, (d - 1) / 2.0) / std::tgamma((d + 1) / 2.0) * cap_integral(d, eps);
}

bool HalfspacePolytope::contains(const Vec& x) const {
    for (const auto& h : constraints)
        if (dot(h.normal, x) > h.offset) return false;
    return true;
}

HalfspacePolytope make_polytope(int dim, std::vector<Halfspace> constraints) {
    if (constraints.empty()) throw std::invalid_argument("make_polytope: empty constraint list");
    for (auto& h : constraints) {
        if (static_cast<int>(h.normal.size()) != dim)
            throw std::invalid_argument("make_polytope: normal dimension mismatch");
        double n = norm(h.normal);
        if (std::fabs(n - 1.0) > 1e-12)
            throw std::invalid_argument("make_polytope: normals must be unit vectors");
    }
    return HalfspacePolytope{dim, std::move(constraints)};
}

HalfspacePolytope erode_polytope(const HalfspacePolytope& p, double eta) {
    if (eta < 0.0) throw std::invalid_argument("erode_polytope: eta must be >= 0");
    HalfspacePolytope out = p;
    for (auto& h : out.constraints) h.offset -= eta;
    return out;
}

Vec sample_uniform_ball(int d, double radius, RandomGenerator& rng) {
    if (d < 1) throw std::invalid_argument("sample_uniform_ball: d must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_uniform_ball: radius must be > 0");
    Vec v = rng.unit_vector(d);
    double r = radius * std::pow(rng.uniform(), 1.0 / d);
    for (auto& x : v) x *= r;
    return v;
}

}  // namespace lcd
