#pragma once

// Counter-based random streams. A stream is identified by (seed, stream id);
// draw k of a stream is a pure function of (seed, stream id, k), so any
// trial can be replayed from its seed and index alone, and parallel workers
// never share generator state.

#include <cstdint>
#include <limits>

#include "ergent/qcore.hpp"

namespace ergent {

class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Independent child stream; does not advance this stream.
    CounterRng split(std::uint64_t child) const noexcept;

    double uniform() noexcept;            // [0, 1)
    double uniform(double lo, double hi) noexcept;
    double normal() noexcept;             // standard normal
    int integer(int lo, int hi) noexcept;  // inclusive range

    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Haar-random pure state on `reg`.
PureState random_state(const Register& reg, CounterRng& rng);

/// Haar-random n x n unitary (QR of a complex Ginibre matrix with phase fix).
CMatrix random_unitary(int n, CounterRng& rng);

/// Haar-random m x r isometry (first r columns of a random unitary).
CMatrix random_isometry(int m, int r, CounterRng& rng);

/// Uniformly random probability vector of length n, sorted nonincreasing.
std::vector<double> random_probabilities(int n, CounterRng& rng);

}  // namespace ergent
