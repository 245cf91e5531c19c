#include "kdesample/rng.hpp"

#include <cmath>

#include "kdesample/errors.hpp"

namespace kdesample {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed derive_seed(Seed base, std::string_view label) {
    std::uint64_t mixed = splitmix64(base.master ^ 0x6a09e667f3bcc909ULL);
    return Seed{splitmix64(mixed ^ fnv1a64(label))};
}

RngStream::RngStream(Seed seed, std::string_view label)
    : engine_(derive_seed(seed, label).master) {}

std::uint64_t RngStream::next_u64() {
    return engine_();
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw ArgumentError("uniform_index: n must be >= 1");
    const std::uint64_t n64 = n;
    const std::uint64_t rem = (0 - n64) % n64;  // 2^64 mod n
    std::uint64_t x = next_u64();
    if (rem != 0) {
        const std::uint64_t limit = 0 - rem;  // 2^64 - rem, largest fair bound
        while (x >= limit) x = next_u64();
    }
    return static_cast<std::size_t>(x % n64);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mul;
    has_spare_ = true;
    return u * mul;
}

}  // namespace kdesample
