#pragma once

#include <filesystem>
#include <vector>

#include "ctsc/core_model.hpp"
#include "ctsc/rng.hpp"

namespace ctsc {

/// i.i.d. standard complex Gaussian features (unit variance per component),
/// one L x K block per user. A symbol row that comes out all-zero is redrawn;
/// `regenerated` receives the number of redraws.
std::vector<FeatureBlock> gen_gaussian_features(const SystemConfig& cfg, RngStream& rng,
                                                std::size_t* regenerated = nullptr);

/// CTSF v1 feature file:
///   "CTSF" | u16 version=1 | u16 flags=0 | u32 N | u32 L | u32 K      (little endian)
///   then N*L*K pairs of float32 LE (real, imag), user-major, then symbol, then subcarrier.
/// Values are narrowed to float32 on write.
void write_features(std::span<const FeatureBlock> blocks, const std::filesystem::path& path);
std::vector<FeatureBlock> read_features(const std::filesystem::path& path);

/// In-memory variants used by the file functions.
std::vector<unsigned char> encode_features(std::span<const FeatureBlock> blocks);
std::vector<FeatureBlock> decode_features(std::span<const unsigned char> bytes);

}  // namespace ctsc
