#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcd/density.hpp"
#include "lcd/geometry.hpp"

namespace lcd {

enum class FamilyVariant { assouad_1d, assouad_ballcap, entropy_1d, entropy_rescaled_d };

std::string to_string(FamilyVariant v);

// K/8 * (1 - sqrt(C)) * gamma, the Assouad risk bound for a hypercube family
// with per-bit separation gamma and one-flip squared Hellinger closeness C/n.
struct AssouadCertificate {
    int K = 0;
    double gamma = 0.0;
    double C = 0.0;
    double bound = 0.0;
};

AssouadCertificate assouad_bound(int K, double gamma, double C);

// Binary code words stored as bit blocks; gv_certified marks codes built by
// the full greedy lexicographic construction (which provably reaches size
// ceil(e^{K/8}) at distance ceil(K/4)).
struct BinaryCode {
    int K = 0;
    int min_distance = 0;
    bool gv_certified = false;
    std::vector<std::vector<std::uint64_t>> words;  // each word: ceil(K/64) blocks

    std::vector<std::uint8_t> bits(std::size_t word_index) const;
    int hamming(std::size_t i, std::size_t j) const;
    std::size_t size() const { return words.size(); }
};

// Greedy lexicographic Gilbert-Varshamov code of length K, distance
// ceil(K/4), size >= ceil(e^{K/8}).  Full enumeration; feasible for K <= 26.
BinaryCode gilbert_varshamov_subset(int K);

// Random K/4-separated words for pair sampling when K is too large to
// enumerate; not a certified GV code.
BinaryCode sample_separated_words(int K, int count, RandomGenerator& rng);

// Unique root in [0.148, 0.149] of
//   (2z - sin(4z)/2 - (2/3) sin^3(2z) cos(2z)) / (4 (2z - sin(4z)/2)^2) = 1,
// the half-angle that makes the entropy construction's second moment work
// out; bisection to residual < 1e-12.
double zeta_star();
double zeta_star_residual(double z);

struct MomentReport {
    double mean_norm = 0.0;       // exact for ballcap variants, quadrature for 1-D
    double variance_lo = 0.0;     // min over checked members / coordinates
    double variance_hi = 0.0;
    double mean_norm_bound = 0.0;
    double variance_window_lo = 0.0;
    double variance_window_hi = 0.0;
    bool within_bounds = false;
    double eta = 0.0;
};

// A {0,1}^K-indexed family of adversarial densities plus its construction
// constants.  1-D variants generate SemicirclePerturbation1D members,
// ballcap variants ConvexBodyUniform members.
class PerturbationFamily {
public:
    FamilyVariant variant;
    int dim = 1;
    int K = 0;
    double eps = 0.0;
    double r = 0.0;

    // assouad_1d: c_{r,K,eps}; ballcap variants: c_{K,eps} (unit-ball scale)
    double c_constant = 0.0;
    std::optional<double> zeta = {};          // entropy variants
    std::optional<SpherePacking> packing = {};  // ballcap variants
    std::optional<MomentReport> moment_report = {};  // entropy variants
    std::optional<BinaryCode> code = {};             // entropy variants

    SemicirclePerturbation1D member_1d(const std::vector<std::uint8_t>& alpha) const;
    ConvexBodyUniform member_body(const std::vector<std::uint8_t>& alpha) const;

    // ballcap variants: h^2(f_alpha, f_beta) = ||alpha-beta||_0 * 2 V_cap / c
    // exactly (the removed caps are disjoint); scale-invariant under r.
    double pair_hellinger_sq_exact(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b) const;

    double cap_volume_unit() const;  // unit-ball cap volume (ballcap variants)

    std::vector<std::uint8_t> all_zeros() const { return std::vector<std::uint8_t>(K, 0); }
    std::vector<std::uint8_t> all_ones() const { return std::vector<std::uint8_t>(K, 1); }
    std::vector<std::uint8_t> one_flip(int k) const;  // all-zeros with bit k set
};

// Theorem-1 family, d = 1: eps = n^{-1/5}/2, r = 2/3, K = floor(pi/(6 arcsin eps)).
PerturbationFamily build_assouad_1d(long n);

// Theorem-1 family, d >= 2: uniform densities on the unit ball with K
// alpha-selected caps removed; packing directions from greedy_sphere_packing.
PerturbationFamily build_assouad_ballcap(int d, long n, std::uint64_t packing_seed = 0x5EEDBA11);

// Theorem-5(ii) family, d = 1: requires eps <= min(1e-6, eta1^2/400).
PerturbationFamily build_entropy_family_1d(double eps, double eta1 = 0.99);

// Theorem-5(ii) family, d >= 2: the ballcap family rescaled by r = sqrt(d+2);
// requires eps <= min(1e-4, sqrt(eta_d)/(4 sqrt(d+2))).
PerturbationFamily build_entropy_family_d(int d, double eps, double eta_d = 0.9,
                                          std::uint64_t packing_seed = 0x5EEDBA11);

// Ballcap family at an explicit eps (shared by build_assouad_ballcap and
// build_entropy_family_d).
PerturbationFamily build_ballcap_family(int d, double eps, double scale_r,
                                        std::uint64_t packing_seed);

}  // namespace lcd
