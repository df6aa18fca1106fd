#pragma once

#include <cstdint>
#include <random>

namespace ctsc {

/// Independent random stream keyed by (seed, stream_id, lane).
///
/// A trial uses stream_id = trial index, and each random quantity inside a
/// trial (features, channel, noise) gets its own lane, so changing how many
/// numbers one quantity consumes never shifts another. Sequences are
/// reproducible within one build; across standard libraries they are not,
/// since std::normal_distribution is implementation-defined.
class RngStream {
public:
    enum class Lane : std::uint64_t { Features = 0, Channel = 1, Noise = 2, NoiseFaded = 3, Misc = 4 };

    RngStream(std::uint64_t seed, std::uint64_t stream_id, Lane lane = Lane::Misc);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Standard normal draw.
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 engine_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace ctsc
