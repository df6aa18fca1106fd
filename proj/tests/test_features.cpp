#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "ctsc/error.hpp"
#include "ctsc/features.hpp"

using namespace ctsc;

namespace {

std::vector<FeatureBlock> sample(std::size_t N, std::size_t L, std::size_t K, std::uint64_t seed) {
    SystemConfig cfg;
    cfg.n_users = N;
    cfg.n_symbols = L;
    cfg.n_subcarriers = K;
    cfg.power_budget.assign(N, 1.0);
    RngStream rng(seed, 0, RngStream::Lane::Features);
    return gen_gaussian_features(cfg, rng);
}

Errc decode_error(const std::vector<unsigned char>& bytes) {
    try {
        decode_features(bytes);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::IoFailure;
}

void put_u32(std::vector<unsigned char>& b, std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        b[at + i] = static_cast<unsigned char>(v >> (8 * i));
    }
}

std::filesystem::path temp_path(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST(Features, GaussianDeterministic) {
    const auto a = sample(2, 8, 64, 3);
    const auto b = sample(2, 8, 64, 3);
    const auto c = sample(2, 8, 64, 4);
    EXPECT_TRUE(a[0].data == b[0].data);
    EXPECT_TRUE(a[1].data == b[1].data);
    EXPECT_FALSE(a[0].data == c[0].data);
    EXPECT_EQ(a[1].user, 1u);
}

// 1e5 entries: mean |x|^2 = 2 with standard error 2/sqrt(1e5) = 0.0063, so
// the +-2% band is over 6 sigma.
TEST(Features, GaussianSecondMoment) {
    const auto f = sample(1, 100, 1000, 5);
    double e = 0.0;
    for (const cplx& v : f[0].data.flat()) {
        e += std::norm(v);
    }
    e /= static_cast<double>(f[0].data.size());
    EXPECT_NEAR(e, 2.0, 0.04);
}

TEST(Features, NormalizationComposes) {
    const auto f = sample(2, 4, 16, 6);
    const TransmitBlock t = normalize_features(f[0], 0.8);
    for (std::size_t l = 0; l < 4; ++l) {
        double p = 0.0;
        for (const cplx& v : t.data.row(l)) {
            p += std::norm(v);
        }
        EXPECT_NEAR(p / 0.8, 1.0, 1e-12);
    }
}

TEST(Features, RoundTripBitExact) {
    auto f = sample(2, 8, 64, 7);
    // The file stores float32; start from float32-representable values.
    for (auto& b : f) {
        for (cplx& v : b.data.flat()) {
            v = cplx(static_cast<float>(v.real()), static_cast<float>(v.imag()));
        }
    }
    const auto path = temp_path("ctsc_roundtrip.ctsf");
    write_features(f, path);
    EXPECT_EQ(std::filesystem::file_size(path), 20u + 2 * 8 * 64 * 8);
    const auto g = read_features(path);
    ASSERT_EQ(g.size(), 2u);
    for (std::size_t n = 0; n < 2; ++n) {
        EXPECT_EQ(g[n].user, n);
        ASSERT_TRUE(g[n].data.same_shape(f[n].data));
        for (std::size_t i = 0; i < f[n].data.size(); ++i) {
            EXPECT_EQ(std::memcmp(&g[n].data.flat()[i], &f[n].data.flat()[i], sizeof(cplx)), 0);
        }
    }
    std::filesystem::remove(path);
}

TEST(Features, HeaderLayout) {
    const auto bytes = encode_features(sample(3, 2, 5, 1));
    ASSERT_GE(bytes.size(), 20u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CTSF");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[5], 0);
    EXPECT_EQ(bytes[6], 0);
    EXPECT_EQ(bytes[8], 3);
    EXPECT_EQ(bytes[12], 2);
    EXPECT_EQ(bytes[16], 5);
    EXPECT_EQ(bytes.size(), 20u + 3 * 2 * 5 * 8);
}

TEST(Features, PayloadIsLittleEndianFloat32) {
    std::vector<FeatureBlock> f{{0, ComplexGrid(1, 1)}};
    f[0].data(0, 0) = cplx(1.0, -2.0);
    const auto bytes = encode_features(f);
    // 1.0f = 0x3f800000, -2.0f = 0xc0000000
    const unsigned char expect[] = {0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0xc0};
    ASSERT_EQ(bytes.size(), 28u);
    EXPECT_EQ(std::memcmp(bytes.data() + 20, expect, 8), 0);
}

TEST(Features, MalformedFilesAreDistinguished) {
    const auto good = encode_features(sample(2, 8, 64, 2));

    auto bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_EQ(decode_error(bad_magic), Errc::BadMagic);

    auto bad_version = good;
    bad_version[4] = 2;
    EXPECT_EQ(decode_error(bad_version), Errc::VersionMismatch);

    auto short_payload = good;
    short_payload.resize(good.size() - 8);
    EXPECT_EQ(decode_error(short_payload), Errc::TruncatedPayload);

    std::vector<unsigned char> short_header(good.begin(), good.begin() + 10);
    EXPECT_EQ(decode_error(short_header), Errc::TruncatedPayload);

    auto trailing = good;
    trailing.push_back(0);
    EXPECT_EQ(decode_error(trailing), Errc::TrailingBytes);

    auto huge = good;
    put_u32(huge, 8, 0xffffffffu);
    put_u32(huge, 12, 0xffffffffu);
    put_u32(huge, 16, 0xffffffffu);
    EXPECT_EQ(decode_error(huge), Errc::ShapeOverflow);
}

TEST(Features, MissingFileIsIoFailure) {
    try {
        read_features(temp_path("ctsc_does_not_exist.ctsf"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IoFailure);
    }
}

TEST(Features, InconsistentShapesRejectedOnWrite) {
    std::vector<FeatureBlock> f{{0, ComplexGrid(2, 3)}, {1, ComplexGrid(2, 4)}};
    EXPECT_THROW(encode_features(f), Error);
}
