#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lcd/rng.hpp"

namespace lcd {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);

// A 2*eps-separated point set on the unit sphere S^{d-1}; maximal means no
// probe proposal could be added without breaking the strict separation.
struct SpherePacking {
    int dim = 0;
    double eps = 0.0;
    std::vector<Vec> points;
    bool maximal = false;
    std::size_t proposal_count = 0;  // size of the probe set the packing was certified against

    // strict pairwise separation > 2*eps over all pairs
    double min_pairwise_distance() const;
};

// Size sandwich for maximal packings:
//   ceil((2pi)^{1/2}(d-1)^{1/2} 3^{-1/2} 2^{-(d-1)} eps^{-(d-1)})
//   <= N <= floor(4^{d-1} pi (d-1)^{1/2} 15^{-(d-1)/2} eps^{-(d-1)})
std::size_t packing_size_lower_bound(int d, double eps);
std::size_t packing_size_upper_bound(int d, double eps);

// Maximal 2*eps-separated set grown greedily from seeded uniform proposals
// (10^5 * d proposals).  A farthest-point pass plus random-order saturation
// restarts; the largest packing is kept and certified maximal against the
// proposal set.  Requires d >= 2 and 0 < eps <= 1/2.
SpherePacking greedy_sphere_packing(int d, double eps, std::uint64_t seed);

// int_0^{eps^2 - eps^4/4} t^{(d+1)/2 - 1} (1-t)^{-1/2} dt, abs tol 1e-12.
// This is the cap-volume integral: the spherical cap {x in B_d(0,1):
// u^T x > 1 - eps^2/2} has volume pi^{(d-1)/2}/(2 Gamma((d+1)/2)) times it.
double cap_integral(int d, double eps);

double unit_ball_volume(int d);
double cap_volume(int d, double eps);

struct Halfspace {
    Vec normal;     // unit vector b_j
    double offset;  // beta_j, constraint b_j^T x <= beta_j
};

struct HalfspacePolytope {
    int dim = 0;
    std::vector<Halfspace> constraints;

    bool contains(const Vec& x) const;
};

HalfspacePolytope make_polytope(int dim, std::vector<Halfspace> constraints);

// Inner parallel set of a polytope: every offset beta_j becomes beta_j - eta.
HalfspacePolytope erode_polytope(const HalfspacePolytope& p, double eta);

// Uniform point in the closed ball of the given radius.
Vec sample_uniform_ball(int d, double radius, RandomGenerator& rng);

}  // namespace lcd
