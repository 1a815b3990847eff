#include "lcd/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcd/metrics.hpp"
#include "lcd/quadrature.hpp"

namespace lcd {

std::string to_string(FamilyVariant v) {
    switch (v) {
        case FamilyVariant::assouad_1d: return "assouad-1d";
        case FamilyVariant::assouad_ballcap: return "assouad-ballcap";
        case FamilyVariant::entropy_1d: return "entropy-1d";
        case FamilyVariant::entropy_rescaled_d: return "entropy-rescaled-d";
    }
    return "?";
}

AssouadCertificate assouad_bound(int K, double gamma, double C) {
    if (K < 1) throw std::invalid_argument("assouad_bound: K must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("assouad_bound: gamma must be > 0");
    if (!(C > 0.0 && C < 1.0))
        throw std::invalid_argument("assouad_bound: C must lie in (0,1) (bound vacuous otherwise)");
    AssouadCertificate cert;
    cert.K = K;
    cert.gamma = gamma;
    cert.C = C;
    cert.bound = K / 8.0 * (1.0 - std::sqrt(C)) * gamma;
    return cert;
}

// --- binary codes -----------------------------------------------------------

std::vector<std::uint8_t> BinaryCode::bits(std::size_t w) const {
    std::vector<std::uint8_t> out(K);
    for (int i = 0; i < K; ++i)
        out[i] = static_cast<std::uint8_t>((words[w][i / 64] >> (i % 64)) & 1u);
    return out;
}

int BinaryCode::hamming(std::size_t i, std::size_t j) const {
    int d = 0;
    for (std::size_t b = 0; b < words[i].size(); ++b)
        d += std::popcount(words[i][b] ^ words[j][b]);
    return d;
}

namespace {
int hamming_words(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::popcount(a[i] ^ b[i]);
    return d;
}
}  // namespace

BinaryCode gilbert_varshamov_subset(int K) {
    if (K < 8) throw std::invalid_argument("gilbert_varshamov_subset: K must be >= 8");
    if (K > 26)
        throw std::invalid_argument(
            "gilbert_varshamov_subset: full enumeration limited to K <= 26; "
            "use sample_separated_words for long codes");
    const int dist = static_cast<int>(std::ceil(K / 4.0));
    const std::uint64_t total = std::uint64_t{1} << K;
    BinaryCode code;
    code.K = K;
    code.min_distance = dist;
    for (std::uint64_t w = 0; w < total; ++w) {
        bool ok = true;
        for (const auto& c : code.words)
            if (std::popcount(c[0] ^ w) < dist) {
                ok = false;
                break;
            }
        if (ok) code.words.push_back({w});
    }
    const auto bound = static_cast<std::size_t>(std::ceil(std::exp(K / 8.0)));
    if (code.words.size() < bound)
        throw std::runtime_error(
            "gilbert_varshamov_subset: greedy code smaller than the Gilbert-Varshamov bound");
    code.gv_certified = true;
    return code;
}

BinaryCode sample_separated_words(int K, int count, RandomGenerator& rng) {
    if (K < 8) throw std::invalid_argument("sample_separated_words: K must be >= 8");
    if (count < 2) throw std::invalid_argument("sample_separated_words: count must be >= 2");
    const int dist = static_cast<int>(std::ceil(K / 4.0));
    const std::size_t blocks = (K + 63) / 64;
    BinaryCode code;
    code.K = K;
    code.min_distance = dist;
    long attempts = 0;
    while (static_cast<int>(code.words.size()) < count) {
        if (++attempts > 100000L * count)
            throw std::runtime_error("sample_separated_words: could not reach requested count");
        std::vector<std::uint64_t> w(blocks);
        for (auto& b : w) b = rng.next_u64();
        if (K % 64 != 0) w.back() &= (std::uint64_t{1} << (K % 64)) - 1;
        bool ok = true;
        for (const auto& c : code.words)
            if (hamming_words(c, w) < dist) {
                ok = false;
                break;
            }
        if (ok) code.words.push_back(std::move(w));
    }
    return code;
}

// --- zeta* ------------------------------------------------------------------

double zeta_star_residual(double z) {
    double a = 2.0 * z - 0.5 * std::sin(4.0 * z);
    double s2 = std::sin(2.0 * z);
    double num = a - (2.0 / 3.0) * s2 * s2 * s2 * std::cos(2.0 * z);
    return num / (4.0 * a * a) - 1.0;
}

double zeta_star() {
    double lo = 0.148, hi = 0.149;
    double flo = zeta_star_residual(lo), fhi = zeta_star_residual(hi);
    if (!(flo * fhi < 0.0)) throw std::runtime_error("zeta_star: bracket does not change sign");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = zeta_star_residual(mid);
        if (std::fabs(fm) < 1e-13) return mid;
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// --- family members ---------------------------------------------------------

std::vector<std::uint8_t> PerturbationFamily::one_flip(int k) const {
    if (k < 0 || k >= K) throw std::invalid_argument("one_flip: bit index out of range");
    auto a = all_zeros();
    a[static_cast<std::size_t>(k)] = 1;
    return a;
}

SemicirclePerturbation1D PerturbationFamily::member_1d(
    const std::vector<std::uint8_t>& alpha) const {
    if (variant != FamilyVariant::assouad_1d && variant != FamilyVariant::entropy_1d)
        throw std::invalid_argument("member_1d: not a 1-D family");
    if (static_cast<int>(alpha.size()) != K)
        throw std::invalid_argument("member_1d: alpha length must equal K");
    auto v = (variant == FamilyVariant::assouad_1d) ? SemicirclePerturbation1D::Variant::raised
                                                    : SemicirclePerturbation1D::Variant::entropy;
    return SemicirclePerturbation1D(v, r, eps, alpha);
}

ConvexBodyUniform PerturbationFamily::member_body(const std::vector<std::uint8_t>& alpha) const {
    if (variant != FamilyVariant::assouad_ballcap && variant != FamilyVariant::entropy_rescaled_d)
        throw std::invalid_argument("member_body: not a ballcap family");
    if (static_cast<int>(alpha.size()) != K)
        throw std::invalid_argument("member_body: alpha length must equal K");
    // support = ball minus the K removed caps; alpha_k = 1 keeps the cap at
    // x_{k,0} = packing point k, removes the cap at x_{k,1} = packing point K+k
    std::vector<Halfspace> hs;
    hs.reserve(K);
    const double offset = r * (1.0 - eps * eps / 2.0);
    for (int k = 0; k < K; ++k) {
        const Vec& u = packing->points[alpha[k] ? static_cast<std::size_t>(K + k)
                                                : static_cast<std::size_t>(k)];
        hs.push_back(Halfspace{u, offset});
    }
    double volume = std::pow(r, dim) * c_constant;  // c_{K,eps} = unit-ball volume of the body
    return ConvexBodyUniform(dim, r, std::move(hs), volume);
}

double PerturbationFamily::cap_volume_unit() const {
    if (variant != FamilyVariant::assouad_ballcap && variant != FamilyVariant::entropy_rescaled_d)
        throw std::invalid_argument("cap_volume_unit: not a ballcap family");
    return cap_volume(dim, eps);
}

double PerturbationFamily::pair_hellinger_sq_exact(const std::vector<std::uint8_t>& a,
                                                   const std::vector<std::uint8_t>& b) const {
    if (variant != FamilyVariant::assouad_ballcap && variant != FamilyVariant::entropy_rescaled_d)
        throw std::invalid_argument("pair_hellinger_sq_exact: not a ballcap family");
    if (static_cast<int>(a.size()) != K || static_cast<int>(b.size()) != K)
        throw std::invalid_argument("pair_hellinger_sq_exact: alpha length must equal K");
    int flips = 0;
    for (int k = 0; k < K; ++k) flips += (a[k] != b[k]) ? 1 : 0;
    // h^2 is affine invariant, so the unit-ball expression applies at any r
    return flips * 2.0 * cap_volume_unit() / c_constant;
}

// --- builders ---------------------------------------------------------------

PerturbationFamily build_assouad_1d(long n) {
    if (n < 2) throw std::invalid_argument("build_assouad_1d: n must be >= 2");
    PerturbationFamily fam;
    fam.variant = FamilyVariant::assouad_1d;
    fam.dim = 1;
    fam.eps = 0.5 * std::pow(static_cast<double>(n), -0.2);
    fam.r = 2.0 / 3.0;
    double theta1 = std::asin(fam.eps);
    fam.K = static_cast<int>(std::floor(M_PI / (6.0 * theta1)));
    if (fam.K < 1) throw std::invalid_argument("build_assouad_1d: n too small for K >= 1");
    double seg = theta1 - fam.eps * std::sqrt(1.0 - fam.eps * fam.eps);
    fam.c_constant =
        (1.0 - 0.5 * M_PI * fam.r * fam.r + fam.K * fam.r * fam.r * seg) / (2.0 * fam.r);
    const double c0 = 0.75 * (1.0 - 2.0 * M_PI / 9.0);
    if (fam.c_constant < c0 - 1e-12)
        throw std::runtime_error("build_assouad_1d: c_{r,K,eps} fell below (3/4)(1 - 2pi/9)");
    return fam;
}

PerturbationFamily build_ballcap_family(int d, double eps, double scale_r,
                                        std::uint64_t packing_seed) {
    if (d < 2) throw std::invalid_argument("build_ballcap_family: d must be >= 2");
    if (!(eps > 0.0) || eps > 0.5)
        throw std::invalid_argument("build_ballcap_family: eps must lie in (0, 1/2]");
    PerturbationFamily fam;
    fam.variant = FamilyVariant::assouad_ballcap;
    fam.dim = d;
    fam.eps = eps;
    fam.r = scale_r;
    fam.packing = greedy_sphere_packing(d, eps, packing_seed);
    std::size_t N = fam.packing->points.size();
    if (N < 2) throw std::invalid_argument("build_ballcap_family: packing too small (N < 2)");
    fam.K = static_cast<int>(N / 2);
    fam.c_constant = unit_ball_volume(d) - fam.K * cap_volume(d, eps);
    // Eq. (crKe) sandwich
    double vb = unit_ball_volume(d);
    if (!(fam.c_constant >= 0.5 * vb - 1e-12 && fam.c_constant <= vb + 1e-12))
        throw std::runtime_error("build_ballcap_family: c_{K,eps} outside its sandwich");
    return fam;
}

PerturbationFamily build_assouad_ballcap(int d, long n, std::uint64_t packing_seed) {
    if (d < 2) throw std::invalid_argument("build_assouad_ballcap: d must be >= 2");
    if (n < d + 1) throw std::invalid_argument("build_assouad_ballcap: n must be >= d+1");
    double eps = std::pow(std::sqrt(M_PI) * std::sqrt(d - 1.0) / std::sqrt(6.0), 1.0 / (d - 1.0)) *
                 0.5 * std::pow(static_cast<double>(n), -1.0 / (d + 1.0));
    if (eps > 0.5) throw std::invalid_argument("build_assouad_ballcap: n too small (eps > 1/2)");
    return build_ballcap_family(d, eps, 1.0, packing_seed);
}

namespace {

MomentReport entropy_1d_moments(const PerturbationFamily& fam, double eta1) {
    MomentReport rep;
    rep.eta = eta1;
    rep.mean_norm_bound = std::sqrt(eta1) / std::sqrt(2.0);
    rep.variance_window_lo = 1.0 - eta1 / 2.0;
    rep.variance_window_hi = 1.0 + eta1;
    rep.variance_lo = std::numeric_limits<double>::infinity();
    rep.variance_hi = -std::numeric_limits<double>::infinity();
    for (const auto& alpha : {fam.all_zeros(), fam.all_ones()}) {
        Moments1D m = fam.member_1d(alpha).moments();
        rep.mean_norm = std::max(rep.mean_norm, std::fabs(m.mean));
        rep.variance_lo = std::min(rep.variance_lo, m.variance);
        rep.variance_hi = std::max(rep.variance_hi, m.variance);
    }
    rep.within_bounds = rep.mean_norm <= rep.mean_norm_bound &&
                        rep.variance_lo >= rep.variance_window_lo &&
                        rep.variance_hi <= rep.variance_window_hi;
    return rep;
}

}  // namespace

PerturbationFamily build_entropy_family_1d(double eps, double eta1) {
    double cap = std::min(1e-6, eta1 * eta1 / 400.0);
    if (!(eps > 0.0) || eps > cap)
        throw std::invalid_argument("build_entropy_family_1d: eps out of range");
    PerturbationFamily fam;
    fam.variant = FamilyVariant::entropy_1d;
    fam.dim = 1;
    fam.eps = eps;
    fam.zeta = zeta_star();
    double w1 = std::asin(std::sqrt(eps));
    fam.K = static_cast<int>(std::floor(*fam.zeta / w1));
    double wK = fam.K * w1, w4K = 4.0 * fam.K * w1;
    double denom = wK - 0.5 * std::sin(w4K) + fam.K * std::sqrt(eps) * std::sqrt(1.0 - eps);
    if (!(denom > 0.0)) throw std::runtime_error("build_entropy_family_1d: bad normalizer");
    fam.r = 1.0 / std::sqrt(denom);
    fam.c_constant = -fam.r * std::cos(w4K / 2.0);  // the subtracted plateau -r cos(w_{2K})
    fam.moment_report = entropy_1d_moments(fam, eta1);

    RandomGenerator rng(0xC0DE5EEDULL ^ static_cast<std::uint64_t>(fam.K));
    if (fam.K >= 8)
        fam.code = (fam.K <= 26) ? gilbert_varshamov_subset(fam.K)
                                 : sample_separated_words(fam.K, std::min(fam.K, 24), rng);
    return fam;
}

PerturbationFamily build_entropy_family_d(int d, double eps, double eta_d,
                                          std::uint64_t packing_seed) {
    if (d < 2) throw std::invalid_argument("build_entropy_family_d: d must be >= 2");
    double cap = std::min(1e-4, std::sqrt(eta_d) / (4.0 * std::sqrt(d + 2.0)));
    if (!(eps > 0.0) || eps > cap)
        throw std::invalid_argument("build_entropy_family_d: eps out of range");
    PerturbationFamily fam = build_ballcap_family(d, eps, std::sqrt(d + 2.0), packing_seed);
    fam.variant = FamilyVariant::entropy_rescaled_d;
    fam.zeta = zeta_star();

    // Moment report: exact mean via the cap first-moment formula, covariance
    // window recorded for the MC check downstream.
    MomentReport rep;
    rep.eta = eta_d;
    rep.mean_norm_bound = std::sqrt(d + 2.0) / std::pow(2.0, d - 2) * eps * eps;
    rep.variance_window_lo = 1.0 - eta_d;
    rep.variance_window_hi = 1.0 + eta_d;
    // first moment of one unit cap: V_{d-1} (eps^2 - eps^4/4)^{(d+1)/2} / (d+1)
    double vd1 = std::pow(M_PI, (d - 1) / 2.0) / std::tgamma(1.0 + (d - 1) / 2.0);
    double a = eps * eps - std::pow(eps, 4) / 4.0;
    double cap_m1 = vd1 * std::pow(a, (d + 1) / 2.0) / (d + 1);
    for (const auto& alpha : {fam.all_zeros(), fam.all_ones()}) {
        Vec s(d, 0.0);
        for (int k = 0; k < fam.K; ++k) {
            const Vec& u = fam.packing->points[alpha[k] ? static_cast<std::size_t>(fam.K + k)
                                                        : static_cast<std::size_t>(k)];
            for (int i = 0; i < d; ++i) s[i] += u[i];
        }
        // mean = -r * cap_m1 / c * sum of removed directions
        double scale = fam.r * cap_m1 / fam.c_constant;
        rep.mean_norm = std::max(rep.mean_norm, scale * norm(s));
    }
    rep.within_bounds = rep.mean_norm <= rep.mean_norm_bound;
    fam.moment_report = rep;

    RandomGenerator rng(0xC0DE5EEDULL ^ static_cast<std::uint64_t>(fam.K));
    if (fam.K >= 8)
        fam.code = (fam.K <= 26) ? gilbert_varshamov_subset(fam.K)
                                 : sample_separated_words(fam.K, std::min(fam.K, 24), rng);
    return fam;
}

}  // namespace lcd
