#include "lcd/rng.hpp"

#include <cmath>

namespace lcd {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t x) {
    return splitmix64(x);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n, std::uint64_t rep) {
    std::uint64_t h = base_seed;
    h = mix64(h ^ (0xA24BAED4963EE407ULL + n));
    h = mix64(h ^ (0x9FB21C651E98DF25ULL + rep));
    return h;
}

RandomGenerator::RandomGenerator(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t RandomGenerator::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomGenerator::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomGenerator::uniform(double a, double b) {
    return a + (b - a) * uniform();
}

double RandomGenerator::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 in (0,1] so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * M_PI * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
}

double RandomGenerator::exponential() {
    return -std::log(1.0 - uniform());
}

std::vector<double> RandomGenerator::unit_vector(int d) {
    std::vector<double> v(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            v[i] = gaussian();
            norm2 += v[i] * v[i];
        }
    } while (norm2 == 0.0);
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    return v;
}

}  // namespace lcd
