#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace mvlab {

// Identifies one independent random stream: the stream consumed by path
// `path_index` is a pure function of (master_seed, path_index, substream),
// so campaigns are reproducible path by path and substreams (e.g. the two
// Brownian drivers of a stochastic-volatility model) never overlap.
struct RngSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
    std::uint64_t substream = 0;
};

namespace detail {

// splitmix64; used only to spread (seed, path, substream) into engine seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(const RngSeed& s) {
    std::uint64_t h = mix64(s.master_seed);
    h = mix64(h ^ mix64(s.path_index + 0x7f4a7c15ULL));
    h = mix64(h ^ mix64(s.substream + 0x1ce4e5b9ULL));
    return h;
}

}  // namespace detail

// Source of standard normal draws. Simulators pull from this interface so
// tests can substitute deterministic sequences.
class NormalSource {
public:
    virtual ~NormalSource() = default;
    virtual double next() = 0;
};

class SeededNormals final : public NormalSource {
public:
    explicit SeededNormals(const RngSeed& seed) : engine_(detail::derive_seed(seed)) {}

    double next() override { return dist_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

// Test hook: replays a fixed sequence of draws, then throws if exhausted.
class FixedNormals final : public NormalSource {
public:
    explicit FixedNormals(std::span<const double> draws)
        : draws_(draws.begin(), draws.end()) {}

    double next() override {
        if (pos_ >= draws_.size())
            throw std::out_of_range("FixedNormals: sequence exhausted");
        return draws_[pos_++];
    }

private:
    std::vector<double> draws_;
    std::size_t pos_ = 0;
};

}  // namespace mvlab
