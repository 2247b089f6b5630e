#pragma once

#include <cstdint>
#include <random>

#include "ivcompare/session.hpp"

namespace ivc {

/// Seeded source of random commands for stress tests and the CLI's --seed
/// mode. Draws are mapped from raw mt19937_64 output by hand, so sequences
/// are identical across standard libraries.
class CommandFuzzer
{
public:
    explicit CommandFuzzer(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    int integer(int lo, int hi);
    bool chance(double p) { return uniform(0.0, 1.0) < p; }

    /// Any command with arguments sized for `canvas`; it may be unsupported
    /// by the technique.
    Command next(CanvasSize canvas);

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// `count` commands accepted by the engine when replayed from the initial
/// state, spaced `step` seconds apart starting at `step`.
Script random_script(const EngineConfig &cfg, std::uint64_t seed, std::size_t count, double step = 0.5);

} // namespace ivc
