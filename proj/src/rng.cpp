#include "ctsc/rng.hpp"

#include <array>

namespace ctsc {

namespace {

std::mt19937_64 keyed_engine(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane) {
    const std::array<std::uint32_t, 6> key{
        static_cast<std::uint32_t>(seed),      static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
        static_cast<std::uint32_t>(lane),      static_cast<std::uint32_t>(lane >> 32)};
    std::seed_seq seq(key.begin(), key.end());
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, Lane lane)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(keyed_engine(seed, stream_id, static_cast<std::uint64_t>(lane))) {}

double RngStream::normal() {
    ++counter_;
    return gauss_(engine_);
}

}  // namespace ctsc
