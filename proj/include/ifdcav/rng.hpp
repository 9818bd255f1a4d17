#pragma once

#include <cstdint>
#include <random>

namespace ifd::rng {

// All sampling is hand-rolled on top of mt19937_64 so that results are
// bit-identical across standard libraries (std::*_distribution algorithms are
// implementation-defined). Algorithm names are recorded in run metadata.
inline constexpr const char* kAlgorithm =
    "mt19937_64; per-trial substreams via splitmix64; uniform = 53-bit "
    "mantissa; poisson = exponential inter-arrival accumulation";

// splitmix64 finalizer (Steele/Lea/Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent, deterministic seed for lane `index` of stream `stream` derived
// from the master seed. Trials seeded this way give statistics that do not
// depend on how trials are distributed over threads.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                                       std::uint64_t index) {
    return splitmix64(splitmix64(master ^ (0xa0761d6478bd642fULL * (stream + 1))) +
                      index);
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double canonical(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Unit-mean exponential variate; argument of log stays in (0, 1].
inline double exp1(std::mt19937_64& gen) {
    return -std::log(1.0 - canonical(gen));
}

// Poisson count by accumulating exponential inter-arrival times until the
// budget `lambda` is exceeded. Exact for any lambda >= 0, O(lambda) draws.
inline long long poisson(std::mt19937_64& gen, double lambda) {
    long long k = 0;
    double acc = exp1(gen);
    while (acc <= lambda) {
        ++k;
        acc += exp1(gen);
    }
    return k;
}

inline bool bernoulli(std::mt19937_64& gen, double p) {
    return canonical(gen) < p;
}

}  // namespace ifd::rng
