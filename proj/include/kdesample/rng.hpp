#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kdesample {

// One master seed for a whole run. Child streams are derived by hashing
// (stream label, master), so independent components never share state and
// results do not depend on execution order.
struct Seed {
    std::uint64_t master = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);

// Child seed for the given label. Distinct labels give distinct streams.
Seed derive_seed(Seed base, std::string_view label);

// Deterministic random stream. All distributions are implemented on top of
// the raw 64-bit output so the byte sequence is identical on every platform
// (std:: distribution objects are implementation-defined).
class RngStream {
public:
    RngStream(Seed seed, std::string_view label);

    std::uint64_t next_u64();

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01();

    // Uniform over {0, ..., n-1}, unbiased (rejection sampling). n >= 1.
    std::size_t uniform_index(std::size_t n);

    // Standard normal draw (Marsaglia polar, cached spare).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kdesample
