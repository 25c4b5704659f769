#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cainfer {

// Deterministic random source for the oracle and the samplers. mt19937_64 output
// is pinned by the standard, and the uniform helpers below avoid the
// implementation-defined std distributions, so a (seed, stream) pair reproduces
// the same values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derive an independent stream, e.g. one per trial index.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 of the pair; decorrelates consecutive indices.
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n >= 1. Multiply-shift; deterministic.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool next_bool(double p) { return next_unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_below(i)]);
        }
    }

    // Flat (uniform Dirichlet) point on the probability simplex of given size.
    std::vector<double> next_simplex(std::size_t size) {
        std::vector<double> w(size);
        double total = 0.0;
        for (double& x : w) {
            double u = next_unit();
            if (u <= 0.0) u = 0x1.0p-53;
            x = -std::log(u);
            total += x;
        }
        for (double& x : w) x /= total;
        return w;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cainfer
