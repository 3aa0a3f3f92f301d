#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "xjbp/channel.hpp"
#include "xjbp/kernels.hpp"
#include "xjbp/message_state.hpp"
#include "xjbp/polar_code.hpp"

using namespace xjbp;

namespace {

double random_llr(SplitMix64& rng) {
  // Moderate values with occasional zeros and saturated ones.
  std::uint64_t pick = rng.next() % 16;
  if (pick == 0) return 0.0;
  if (pick == 1) return kSat;
  if (pick == 2) return -kSat;
  return (rng.uniform01() - 0.5) * 40.0;
}

void fill_random_state(SplitMix64& rng, MessageState& st) {
  for (auto& v : st.l_data()) v = random_llr(rng);
  for (auto& v : st.r_data()) v = random_llr(rng);
}

bool states_identical(const MessageState& a, const MessageState& b) {
  return std::memcmp(a.l_data().data(), b.l_data().data(),
                     a.l_data().size_bytes()) == 0 &&
         std::memcmp(a.r_data().data(), b.r_data().data(),
                     a.r_data().size_bytes()) == 0;
}

}  // namespace

TEST_CASE("min-sum kernel examples") {
  CHECK(g_minsum(2.0, -3.0) == -2.0);
  CHECK(g_minsum(0.0, -7.5) == 0.0);
  CHECK(g_minsum(0.0, 123.0) == 0.0);
  CHECK(g_minsum(kSat, -4.0) == -4.0);
  CHECK(g_minsum(kSat, kSat) == kSat);
}

TEST_CASE("scaled kernel examples") {
  CHECK(g_scaled(2.0, -3.0, 0.9375) == -1.875);
  CHECK(g_scaled(5.0, 4.0, 0.5) == 2.0);
  SplitMix64 rng(0xa001);
  for (int i = 0; i < 200; ++i) {
    double x = random_llr(rng), y = random_llr(rng);
    CHECK(g_scaled(x, y, 1.0) == g_minsum(x, y));
  }
  CHECK_THROWS_AS(g_scaled(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(g_scaled(1.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(g_scaled(1.0, 1.0, -0.2), std::invalid_argument);
}

TEST_CASE("kernel properties") {
  SplitMix64 rng(0xa002);
  for (int i = 0; i < 2000; ++i) {
    double x = random_llr(rng), y = random_llr(rng);
    double g = g_minsum(x, y);
    CHECK(g == g_minsum(y, x));  // symmetry
    CHECK(std::fabs(g) <= std::min(std::fabs(x), std::fabs(y)));
    CHECK(g_minsum(-x, y) == -g);  // odd symmetry
    CHECK(g_scaled(x, y, 0.9375) == 0.9375 * g);  // exact scaling relation
  }
}

TEST_CASE("saturating addition clamps") {
  CHECK(sat_add(2.0, -3.0) == -1.0);
  CHECK(sat_add(kSat, kSat) == kSat);
  CHECK(sat_add(-kSat, -kSat) == -kSat);
  CHECK(sat_add(kSat, -kSat) == 0.0);
  CHECK(sat_add(0.9e30, 0.9e30) == kSat);
}

TEST_CASE("single-PE left update examples") {
  MessageState st(4, 2);
  PeIndex pe{0, 0};
  st.l(0, 1) = 1.5;
  st.l(1, 1) = -2.0;
  st.r(1, 0) = 0.5;
  st.r(0, 0) = 0.0;
  update_left(pe, st);
  CHECK(st.l(0, 0) == -1.5);  // G(1.5, -2 + 0.5)
  CHECK(st.l(1, 0) == -2.0);  // G(0, 1.5) + (-2)

  MessageState zero(4, 2);
  update_left(pe, zero);
  CHECK(zero.l(0, 0) == 0.0);
  CHECK(zero.l(1, 0) == 0.0);

  MessageState sat(4, 2);
  sat.r(0, 0) = kSat;
  sat.l(0, 1) = 3.0;
  sat.l(1, 1) = 1.0;
  update_left(pe, sat);
  CHECK(sat.l(1, 0) == 4.0);  // G(sat, 3) + 1
}

TEST_CASE("single-PE right update examples") {
  PeIndex pe{0, 0};
  MessageState frozen(4, 2);
  frozen.r(0, 0) = kSat;
  frozen.r(1, 0) = kSat;
  frozen.l(0, 1) = -5.0;
  frozen.l(1, 1) = 7.0;
  update_right(pe, frozen);
  CHECK(frozen.r(0, 1) == kSat);
  CHECK(frozen.r(1, 1) == kSat);

  MessageState info(4, 2);
  info.l(0, 1) = -5.0;
  info.l(1, 1) = 7.0;
  update_right(pe, info);
  CHECK(info.r(0, 1) == 0.0);
  CHECK(info.r(1, 1) == 0.0);

  MessageState mixed(4, 2);
  mixed.r(0, 0) = 2.0;
  mixed.r(1, 0) = -1.0;
  mixed.l(0, 1) = 4.0;
  mixed.l(1, 1) = 3.0;
  update_right(pe, mixed);
  CHECK(mixed.r(0, 1) == 2.0);  // G(2, 3 + (-1))
  CHECK(mixed.r(1, 1) == 1.0);  // G(2, 4) + (-1)
}

TEST_CASE("PE updates write exactly their two designated entries") {
  SplitMix64 rng(0xa003);
  const std::size_t n = 8;
  const unsigned m = 3;
  for (unsigned s = 0; s < m; ++s) {
    std::size_t o = std::size_t{1} << s;
    for (std::size_t start = 0; start < n; start += 2 * o) {
      for (std::size_t top = start; top < start + o; ++top) {
        MessageState st(n, m);
        fill_random_state(rng, st);
        MessageState before = st;
        update_left(PeIndex{s, top}, st);
        std::size_t l_diffs = 0;
        for (std::size_t idx = 0; idx < st.l_data().size(); ++idx) {
          if (std::memcmp(&st.l_data()[idx], &before.l_data()[idx],
                          sizeof(double)) != 0) {
            ++l_diffs;
            std::size_t col = idx / n, row = idx % n;
            CHECK(col == s);
            CHECK((row == top || row == top + o));
          }
        }
        CHECK(l_diffs <= 2);
        CHECK(std::memcmp(st.r_data().data(), before.r_data().data(),
                          st.r_data().size_bytes()) == 0);

        update_right(PeIndex{s, top}, st);
        // R writes land in column s+1 at the two designated rows.
        std::size_t r_diffs = 0;
        for (std::size_t idx = 0; idx < st.r_data().size(); ++idx) {
          if (std::memcmp(&st.r_data()[idx], &before.r_data()[idx],
                          sizeof(double)) != 0) {
            ++r_diffs;
            std::size_t col = idx / n, row = idx % n;
            CHECK(col == s + 1);
            CHECK((row == top || row == top + o));
          }
        }
        CHECK(r_diffs <= 2);
      }
    }
  }
}

TEST_CASE("PE updates read exactly their four designated entries") {
  SplitMix64 rng(0xa004);
  const std::size_t n = 8;
  const unsigned m = 3;
  PeIndex pe{1, 4};
  std::size_t o = pe.offset();

  // Pin the four read cells, vary everything else: outputs must not move.
  double a = 1.25, b = -3.5, ra = 0.75, rb = 9.0;
  double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
  for (int trial = 0; trial < 8; ++trial) {
    MessageState st(n, m);
    fill_random_state(rng, st);
    st.l(pe.top, pe.stage + 1) = a;
    st.l(pe.top + o, pe.stage + 1) = b;
    st.r(pe.top, pe.stage) = ra;
    st.r(pe.top + o, pe.stage) = rb;
    update_left(pe, st);
    update_right(pe, st);
    if (trial == 0) {
      l0 = st.l(pe.top, pe.stage);
      l1 = st.l(pe.top + o, pe.stage);
      r0 = st.r(pe.top, pe.stage + 1);
      r1 = st.r(pe.top + o, pe.stage + 1);
    } else {
      CHECK(st.l(pe.top, pe.stage) == l0);
      CHECK(st.l(pe.top + o, pe.stage) == l1);
      CHECK(st.r(pe.top, pe.stage + 1) == r0);
      CHECK(st.r(pe.top + o, pe.stage + 1) == r1);
    }
  }
}

TEST_CASE("posterior ops") {
  auto code = PolarCode::construct(4, 2, 0.3);
  std::vector<double> llrs{1.0, -2.0, 3.0, -4.0};
  MessageState st = init_messages(code, llrs);
  auto post = posterior_codeword_llr(st);
  CHECK(post == llrs);  // R channel column is zero right after init
  st.r(0, 2) = 2.0;
  st.r(1, 2) = kSat;
  post = posterior_codeword_llr(st);
  CHECK(post[0] == 3.0);
  CHECK(post[1] == kSat);

  auto msg = posterior_message_llr(st);
  CHECK(msg == std::vector<double>(4, 0.0));
  st.set_message_llr_supported(false);
  CHECK_THROWS_AS(posterior_message_llr(st), std::logic_error);
}

TEST_CASE("init fills priors") {
  auto code = PolarCode::construct(8, 4, 0.3);
  std::vector<double> llrs(8);
  for (std::size_t i = 0; i < 8; ++i) llrs[i] = 0.25 * (double)i - 1.0;
  MessageState st = init_messages(code, llrs);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(st.l(i, 3) == llrs[i]);
    CHECK(st.r(i, 0) == (code.frozen[i] ? kSat : 0.0));
    CHECK(st.l(i, 0) == 0.0);
    CHECK(st.r(i, 3) == 0.0);
  }
  std::vector<double> bad{1.0, std::numeric_limits<double>::infinity(),
                          0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(init_messages(code, bad), std::invalid_argument);
  CHECK_THROWS_AS(init_messages(code, std::vector<double>(4, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("stage PEs partition the index range") {
  for (unsigned m = 1; m <= 5; ++m) {
    std::size_t n = std::size_t{1} << m;
    for (unsigned s = 0; s < m; ++s) {
      std::size_t o = std::size_t{1} << s;
      std::vector<int> touched(n, 0);
      std::size_t pes = 0;
      for (std::size_t start = 0; start < n; start += 2 * o) {
        for (std::size_t top = start; top < start + o; ++top) {
          touched[top] += 1;
          touched[top + o] += 1;
          pes += 1;
        }
      }
      CHECK(pes == n / 2);
      for (std::size_t i = 0; i < n; ++i) CHECK(touched[i] == 1);
    }
  }
}

TEST_CASE("batch kernels agree with single-PE updates") {
  SplitMix64 rng(0xa005);
  const std::size_t n = 64;
  const unsigned m = 6;
  const Kernels& scalar = select_kernels(Backend::kScalar);

  for (double alpha : {1.0, 0.9375}) {
    MessageState batch(n, m);
    fill_random_state(rng, batch);
    MessageState ref = batch;

    for (unsigned s = 0; s < m; ++s) {
      std::size_t o = std::size_t{1} << s;
      for (std::size_t start = 0; start < n; start += 2 * o) {
        scalar.update_left_run(batch.l_col(s), batch.l_col(s + 1),
                               batch.r_col(s), start, o, o, alpha);
        scalar.update_right_run(batch.r_col(s + 1), batch.r_col(s),
                                batch.l_col(s + 1), start, o, o, alpha);
        for (std::size_t top = start; top < start + o; ++top) {
          update_left(PeIndex{s, top}, ref, alpha);
          update_right(PeIndex{s, top}, ref, alpha);
        }
      }
    }
    CHECK(states_identical(batch, ref));
  }
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!avx2_available()) {
    MESSAGE("avx2 unavailable; skipping");
    return;
  }
  const Kernels& scalar = select_kernels(Backend::kScalar);
  const Kernels& simd = select_kernels(Backend::kAvx2);
  SplitMix64 rng(0xa006);
  const std::size_t n = 128;
  const unsigned m = 7;

  for (double alpha : {1.0, 0.9375, 0.5}) {
    for (int trial = 0; trial < 20; ++trial) {
      MessageState a(n, m);
      fill_random_state(rng, a);
      MessageState b = a;
      for (unsigned s = 0; s < m; ++s) {
        std::size_t o = std::size_t{1} << s;
        for (std::size_t start = 0; start < n; start += 2 * o) {
          scalar.update_left_run(a.l_col(s), a.l_col(s + 1), a.r_col(s),
                                 start, o, o, alpha);
          scalar.update_right_run(a.r_col(s + 1), a.r_col(s), a.l_col(s + 1),
                                  start, o, o, alpha);
          simd.update_left_run(b.l_col(s), b.l_col(s + 1), b.r_col(s), start,
                               o, o, alpha);
          simd.update_right_run(b.r_col(s + 1), b.r_col(s), b.l_col(s + 1),
                                start, o, o, alpha);
        }
      }
      CHECK(states_identical(a, b));
    }
  }

  std::vector<double> x(257), y(257), out_s(257), out_v(257);
  for (int trial = 0; trial < 20; ++trial) {
    for (auto& v : x) v = random_llr(rng);
    for (auto& v : y) v = random_llr(rng);
    scalar.saturating_sum(out_s.data(), x.data(), y.data(), x.size());
    simd.saturating_sum(out_v.data(), x.data(), y.data(), x.size());
    CHECK(std::memcmp(out_s.data(), out_v.data(),
                      x.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("backend selection") {
  CHECK(std::string(select_kernels(Backend::kScalar).name) == "scalar");
  CHECK(parse_backend("scalar") == Backend::kScalar);
  CHECK(parse_backend("auto") == Backend::kAuto);
  CHECK(parse_backend("avx2") == Backend::kAvx2);
  CHECK_THROWS_AS(parse_backend("sse9"), std::invalid_argument);
  if (!avx2_available()) {
    CHECK_THROWS_AS(select_kernels(Backend::kAvx2), std::invalid_argument);
  } else {
    CHECK(std::string(select_kernels(Backend::kAvx2).name) == "avx2");
  }
}
