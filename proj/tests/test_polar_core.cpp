#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "xjbp/channel.hpp"
#include "xjbp/polar_code.hpp"

using namespace xjbp;

namespace {

// Independent encode oracle: materialize the m-fold Kronecker power of
// [[1,0],[1,1]] and multiply row-vector times matrix over GF(2).
std::vector<std::vector<int>> kronecker_generator(unsigned m) {
  std::vector<std::vector<int>> g{{1}};
  for (unsigned s = 0; s < m; ++s) {
    std::size_t half = g.size();
    std::vector<std::vector<int>> next(2 * half,
                                       std::vector<int>(2 * half, 0));
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t j = 0; j < half; ++j) {
        // F = [[1,0],[1,1]] applied on the new (most significant) index bit
        next[i][j] = g[i][j];
        next[half + i][j] = g[i][j];
        next[half + i][half + j] = g[i][j];
      }
    }
    g = std::move(next);
  }
  return g;
}

BitVector dense_encode(const std::vector<std::vector<int>>& g,
                       const BitVector& u) {
  std::size_t n = u.size();
  BitVector x(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    int acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc ^= u[i] & g[i][j];
    x[j] = static_cast<std::uint8_t>(acc);
  }
  return x;
}

BitVector random_bits(SplitMix64& rng, std::size_t n) {
  BitVector v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.next() & 1);
  return v;
}

}  // namespace

TEST_CASE("erasure recursion matches the hand-computed small cases") {
  auto z2 = bec_reliability(2, 0.3);
  CHECK(z2[0] == doctest::Approx(0.51).epsilon(1e-12));
  CHECK(z2[1] == doctest::Approx(0.09).epsilon(1e-12));

  auto z4 = bec_reliability(4, 0.3);
  CHECK(z4[0] == doctest::Approx(0.7599).epsilon(1e-12));
  CHECK(z4[1] == doctest::Approx(0.2601).epsilon(1e-12));
  CHECK(z4[2] == doctest::Approx(0.1719).epsilon(1e-12));
  CHECK(z4[3] == doctest::Approx(0.0081).epsilon(1e-12));
}

TEST_CASE("construction freezes the least reliable indices") {
  auto c2 = PolarCode::construct(2, 1, 0.3);
  CHECK(c2.frozen == BitVector{1, 0});

  auto c4 = PolarCode::construct(4, 2, 0.3);
  CHECK(c4.frozen == BitVector{1, 1, 0, 0});
  CHECK(c4.m == 2);
  CHECK(c4.k == 2);

  auto c8 = PolarCode::construct(8, 4, 0.3);
  CHECK(c8.mask_line() == "11101000");
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(PolarCode::construct(3, 1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::construct(0, 1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::construct(8, 0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::construct(8, 8, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::construct(8, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::construct(8, 4, 1.0), std::invalid_argument);
}

TEST_CASE("freezing is monotone in k") {
  // Fewer information bits can only add frozen indices.
  auto frozen_set = [](const PolarCode& c) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < c.n; ++i) {
      if (c.frozen[i]) s.insert(i);
    }
    return s;
  };
  for (std::size_t k = 8; k < 56; k += 4) {
    auto big = frozen_set(PolarCode::construct(64, k, 0.3));
    auto small = frozen_set(PolarCode::construct(64, k + 4, 0.3));
    for (auto idx : small) CHECK(big.count(idx) == 1);
  }
}

TEST_CASE("encode matches the hand examples") {
  auto c2 = PolarCode::construct(2, 1, 0.3);
  CHECK(encode(c2, BitVector{0, 1}) == BitVector{1, 1});

  auto c4 = PolarCode::from_mask({1, 1, 1, 0});
  CHECK(encode(c4, BitVector{0, 0, 0, 1}) == BitVector{1, 1, 1, 1});
  CHECK(encode(c4, BitVector{0, 0, 0, 0}) == BitVector{0, 0, 0, 0});
}

TEST_CASE("encode rejects bad messages") {
  auto c4 = PolarCode::construct(4, 2, 0.3);
  CHECK_THROWS_AS(encode(c4, BitVector{1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(encode(c4, BitVector{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("butterfly transform equals the dense Kronecker product") {
  SplitMix64 rng(0x7001);
  for (unsigned m = 1; m <= 4; ++m) {
    auto g = kronecker_generator(m);
    std::size_t n = std::size_t{1} << m;
    for (int trial = 0; trial < 32; ++trial) {
      BitVector u = random_bits(rng, n);
      BitVector x = u;
      polar_transform(x);
      CHECK(x == dense_encode(g, u));
    }
  }
}

TEST_CASE("transform is an involution") {
  SplitMix64 rng(0x7002);
  for (std::size_t n : {2, 4, 8, 64, 256}) {
    for (int trial = 0; trial < 16; ++trial) {
      BitVector u = random_bits(rng, n);
      BitVector v = u;
      polar_transform(v);
      polar_transform(v);
      CHECK(v == u);
    }
  }
}

TEST_CASE("message recovery") {
  auto c2 = PolarCode::construct(2, 1, 0.3);
  CHECK(recover_message(c2, BitVector{1, 1}) == BitVector{1});

  auto c4 = PolarCode::construct(4, 2, 0.3);
  CHECK(recover_message(c4, BitVector{1, 1, 1, 1}) == BitVector{0, 1});

  SplitMix64 rng(0x7003);
  auto c64 = PolarCode::construct(64, 32, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    BitVector u(64, 0);
    BitVector info;
    for (std::size_t i = 0; i < 64; ++i) {
      if (!c64.frozen[i]) {
        u[i] = static_cast<std::uint8_t>(rng.next() & 1);
        info.push_back(u[i]);
      }
    }
    CHECK(recover_message(c64, encode(c64, u)) == info);
  }
  CHECK_THROWS_AS(recover_message(c64, BitVector{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("parity check matrix annihilates codewords") {
  auto c4 = PolarCode::construct(4, 2, 0.3);
  auto h4 = ParityCheck::derive(c4);
  CHECK(check_codeword(BitVector{1, 1, 1, 1}, h4));
  CHECK_FALSE(check_codeword(BitVector{1, 0, 0, 0}, h4));

  SplitMix64 rng(0x7004);
  auto c64 = PolarCode::construct(64, 32, 0.3);
  auto h64 = ParityCheck::derive(c64);
  for (int trial = 0; trial < 100; ++trial) {
    BitVector u(64, 0);
    for (std::size_t i = 0; i < 64; ++i) {
      if (!c64.frozen[i]) u[i] = static_cast<std::uint8_t>(rng.next() & 1);
    }
    CHECK(check_codeword(encode(c64, u), h64));
  }
}

TEST_CASE("H columns come from the transform") {
  // Closed form for the Kronecker power: entry (i, j) is 1 iff the bits of
  // j are a subset of the bits of i.
  auto code = PolarCode::construct(16, 8, 0.3);
  auto h = ParityCheck::derive(code);
  std::vector<std::size_t> frozen_idx;
  for (std::size_t i = 0; i < code.n; ++i) {
    if (code.frozen[i]) frozen_idx.push_back(i);
  }
  for (std::size_t c = 0; c < frozen_idx.size(); ++c) {
    for (std::size_t i = 0; i < code.n; ++i) {
      int expected = (i & frozen_idx[c]) == frozen_idx[c] ? 1 : 0;
      CHECK(h.entry(i, c) == expected);
    }
  }
}

TEST_CASE("n=8 syndrome check is exhaustive-sound") {
  auto code = PolarCode::construct(8, 4, 0.3);
  auto h = ParityCheck::derive(code);

  std::set<BitVector> image;
  for (unsigned bits = 0; bits < 16; ++bits) {
    BitVector u(8, 0);
    unsigned b = bits;
    for (std::size_t i = 0; i < 8; ++i) {
      if (!code.frozen[i]) {
        u[i] = b & 1;
        b >>= 1;
      }
    }
    image.insert(encode(code, u));
  }
  CHECK(image.size() == 16);

  for (unsigned word = 0; word < 256; ++word) {
    BitVector x(8);
    for (std::size_t i = 0; i < 8; ++i) x[i] = (word >> i) & 1;
    CHECK(check_codeword(x, h) == (image.count(x) == 1));
  }

  // Single-bit flips leave the image set (minimum distance at least 2).
  for (const auto& cw : image) {
    for (std::size_t i = 0; i < 8; ++i) {
      BitVector y = cw;
      y[i] ^= 1;
      CHECK_FALSE(check_codeword(y, h));
    }
  }
}

TEST_CASE("mask line round trip") {
  auto code = PolarCode::construct(8, 4, 0.3);
  auto mask = PolarCode::parse_mask_line(code.mask_line());
  CHECK(mask == code.frozen);
  auto again = PolarCode::from_mask(mask, 0.3);
  CHECK(again.k == code.k);
  CHECK_THROWS_AS(PolarCode::parse_mask_line("0102"), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::from_mask({0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(PolarCode::from_mask({1, 1, 1}), std::invalid_argument);
}

TEST_CASE("hex packing") {
  CHECK(pack_bits_hex(BitVector{1, 1, 1, 1, 0, 0, 0, 0}) == "f0");
  CHECK(pack_bits_hex(BitVector{0, 1}) == "4");
  CHECK(pack_bits_hex(BitVector{}) == "");
}
