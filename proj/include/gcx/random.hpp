#pragma once

#include <cstdint>
#include <vector>

namespace gcx {

// Identifies one reproducible random stream. Identical (seed, stream_id)
// pairs reproduce identical sequences bit-exactly, on any platform.
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

// SplitMix64 output mix (Steele/Lea/Flood; public-domain reference by Vigna).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based generator: value i of a stream is mix64(key + i*golden),
// so any index can be produced in O(1) and parallel chunks of one stream
// are just disjoint index ranges of the same sequence.
class CounterRng {
public:
    explicit CounterRng(SeededStream s, std::uint64_t start_index = 0)
        : key_(derive_key(s)), counter_(start_index) {}

    std::uint64_t next_u64() {
        const std::uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        return detail::mix64(z);
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard normal variate via the inverse CDF (monotone coupling with
    // the underlying uniform sequence).
    double next_normal();

    std::uint64_t index() const { return counter_; }

    static std::uint64_t derive_key(SeededStream s) {
        const std::uint64_t base = detail::mix64(s.seed ^ 0x6A09E667F3BCC909ULL);
        return detail::mix64(base ^ (s.stream_id * 0xD2B74407B1CE6E93ULL));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// count x dim standard Gaussian matrix, row-major: entry (i,j) is variate
// i*dim + j of the stream. Throws std::invalid_argument on zero dim/count.
std::vector<double> sample_gaussian(std::size_t dim, std::size_t count, SeededStream stream);

// Sub-stream with the same seed; used by Monte Carlo loops to draw
// independent blocks (chunk j of a run uses stream_id offset by j).
inline SeededStream substream(SeededStream s, std::uint64_t offset) {
    return SeededStream{s.seed, s.stream_id + offset};
}

}  // namespace gcx
