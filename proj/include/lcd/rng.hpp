#pragma once

#include <cstdint>
#include <vector>

namespace lcd {

// splitmix64 finalizer; also used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

// Stable per-replication seed: hash of (base_seed, n, rep).  Frozen contract;
// result files record these seeds, so the mixing must never change.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n, std::uint64_t rep);

// xoshiro256++ seeded via splitmix64.  All sampling in the library goes
// through this generator so that results are reproducible across platforms
// (std::<distribution> output is implementation-defined).
class RandomGenerator {
public:
    explicit RandomGenerator(std::uint64_t seed);

    std::uint64_t next_u64();

    // uniform on [0,1)
    double uniform();
    double uniform(double a, double b);

    // standard normal via Box-Muller (pairs cached)
    double gaussian();

    double exponential();  // rate 1

    // uniform direction on the unit sphere S^{d-1}
    std::vector<double> unit_vector(int d);

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lcd
