#include "ctsc/features.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "ctsc/error.hpp"

namespace ctsc {

namespace {

constexpr std::size_t kHeaderBytes = 20;
constexpr std::uint16_t kVersion = 1;

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
    }
}

std::uint32_t get_u32(std::span<const unsigned char> b, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
    }
    return v;
}

std::uint16_t get_u16(std::span<const unsigned char> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(Errc::ShapeOverflow, std::string(what) + " does not fit in 32 bits");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<FeatureBlock> gen_gaussian_features(const SystemConfig& cfg, RngStream& rng,
                                                std::size_t* regenerated) {
    std::vector<FeatureBlock> out;
    out.reserve(cfg.n_users);
    std::size_t redraws = 0;
    for (std::size_t n = 0; n < cfg.n_users; ++n) {
        FeatureBlock fb{n, ComplexGrid(cfg.n_symbols, cfg.n_subcarriers)};
        for (std::size_t l = 0; l < cfg.n_symbols; ++l) {
            auto row = fb.data.row(l);
            for (;;) {
                double energy = 0.0;
                for (cplx& v : row) {
                    const double re = rng.normal();
                    const double im = rng.normal();
                    v = cplx(re, im);
                    energy += std::norm(v);
                }
                if (energy > 0.0) {
                    break;
                }
                ++redraws;
            }
        }
        out.push_back(std::move(fb));
    }
    if (regenerated) {
        *regenerated = redraws;
    }
    return out;
}

std::vector<unsigned char> encode_features(std::span<const FeatureBlock> blocks) {
    const std::size_t n_users = blocks.size();
    const std::size_t L = n_users ? blocks[0].data.rows() : 0;
    const std::size_t K = n_users ? blocks[0].data.cols() : 0;
    for (const auto& b : blocks) {
        if (b.data.rows() != L || b.data.cols() != K) {
            throw Error(Errc::ShapeMismatch, "feature blocks differ in shape");
        }
    }
    std::vector<unsigned char> out;
    out.reserve(kHeaderBytes + n_users * L * K * 8);
    for (const char c : {'C', 'T', 'S', 'F'}) {
        out.push_back(static_cast<unsigned char>(c));
    }
    put_u16(out, kVersion);
    put_u16(out, 0);
    put_u32(out, checked_u32(n_users, "n_users"));
    put_u32(out, checked_u32(L, "n_symbols"));
    put_u32(out, checked_u32(K, "n_subcarriers"));
    for (const auto& b : blocks) {
        for (const cplx& v : b.data.flat()) {
            put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v.real())));
            put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v.imag())));
        }
    }
    return out;
}

std::vector<FeatureBlock> decode_features(std::span<const unsigned char> bytes) {
    if (bytes.size() < 4 || bytes[0] != 'C' || bytes[1] != 'T' || bytes[2] != 'S' ||
        bytes[3] != 'F') {
        throw Error(Errc::BadMagic, "not a CTSF feature file");
    }
    if (bytes.size() < kHeaderBytes) {
        throw Error(Errc::TruncatedPayload, "header is shorter than 20 bytes");
    }
    const std::uint16_t version = get_u16(bytes, 4);
    if (version != kVersion) {
        throw Error(Errc::VersionMismatch, "version " + std::to_string(version));
    }
    const std::uint64_t n_users = get_u32(bytes, 8);
    const std::uint64_t L = get_u32(bytes, 12);
    const std::uint64_t K = get_u32(bytes, 16);
    // Each of N, L, K < 2^32, so N*L*K*8 can exceed 64 bits only through the
    // product; check it step by step.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 8;
    std::uint64_t count = n_users;
    if (L != 0 && count > limit / L) {
        throw Error(Errc::ShapeOverflow, "declared shape overflows");
    }
    count *= L;
    if (K != 0 && count > limit / K) {
        throw Error(Errc::ShapeOverflow, "declared shape overflows");
    }
    count *= K;
    const std::uint64_t payload = count * 8;
    const std::uint64_t available = bytes.size() - kHeaderBytes;
    if (available < payload) {
        throw Error(Errc::TruncatedPayload, "payload holds " + std::to_string(available) +
                                                " bytes, header declares " +
                                                std::to_string(payload));
    }
    if (available > payload) {
        throw Error(Errc::TrailingBytes, std::to_string(available - payload) +
                                             " bytes after declared payload");
    }
    std::vector<FeatureBlock> out;
    out.reserve(n_users);
    std::size_t at = kHeaderBytes;
    for (std::size_t n = 0; n < n_users; ++n) {
        FeatureBlock fb{n, ComplexGrid(L, K)};
        for (cplx& v : fb.data.flat()) {
            const float re = std::bit_cast<float>(get_u32(bytes, at));
            const float im = std::bit_cast<float>(get_u32(bytes, at + 4));
            at += 8;
            v = cplx(re, im);
        }
        out.push_back(std::move(fb));
    }
    return out;
}

void write_features(std::span<const FeatureBlock> blocks, const std::filesystem::path& path) {
    const auto bytes = encode_features(blocks);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw Error(Errc::IoFailure, "cannot open " + path.string() + " for writing");
    }
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os) {
        throw Error(Errc::IoFailure, "write failed for " + path.string());
    }
}

std::vector<FeatureBlock> read_features(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error(Errc::IoFailure, "cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                     std::istreambuf_iterator<char>());
    return decode_features(bytes);
}

}  // namespace ctsc
