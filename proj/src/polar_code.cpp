#include "xjbp/polar_code.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace xjbp {

namespace {

unsigned log2_exact(std::size_t n) {
  return static_cast<unsigned>(std::countr_zero(n));
}

void require_power_of_two(std::size_t n) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("codeword length must be a power of two >= 2");
  }
}

}  // namespace

std::vector<long double> bec_reliability(std::size_t n, double design_erasure) {
  require_power_of_two(n);
  if (!(design_erasure > 0.0 && design_erasure < 1.0)) {
    throw std::invalid_argument("design erasure must lie in (0, 1)");
  }
  // Each doubling appends one index bit: the 0 branch degrades (2z - z^2),
  // the 1 branch upgrades (z^2). In-place from the back keeps reads ahead
  // of writes. long double delays underflow of the z^2 chains.
  std::vector<long double> z(n);
  z[0] = static_cast<long double>(design_erasure);
  for (std::size_t len = 1; len < n; len *= 2) {
    for (std::size_t i = len; i-- > 0;) {
      long double v = z[i];
      z[2 * i] = 2.0L * v - v * v;
      z[2 * i + 1] = v * v;
    }
  }
  return z;
}

PolarCode PolarCode::construct(std::size_t n, std::size_t k,
                               double design_erasure) {
  require_power_of_two(n);
  if (k == 0 || k >= n) {
    throw std::invalid_argument("information count must satisfy 0 < k < n");
  }
  auto z = bec_reliability(n, design_erasure);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&z](std::uint32_t a, std::uint32_t b) {
    if (z[a] != z[b]) return z[a] > z[b];
    return a < b;  // tie: freeze the lower index first
  });

  PolarCode code;
  code.n = n;
  code.m = log2_exact(n);
  code.k = k;
  code.design_erasure = design_erasure;
  code.frozen.assign(n, 0);
  for (std::size_t i = 0; i < n - k; ++i) code.frozen[order[i]] = 1;
  return code;
}

PolarCode PolarCode::from_mask(std::vector<std::uint8_t> mask,
                               double design_erasure) {
  require_power_of_two(mask.size());
  std::size_t frozen_count = 0;
  for (auto b : mask) {
    if (b > 1) throw std::invalid_argument("frozen mask entries must be 0 or 1");
    frozen_count += b;
  }
  std::size_t n = mask.size();
  if (frozen_count == 0 || frozen_count == n) {
    throw std::invalid_argument("frozen mask must leave 0 < k < n");
  }
  PolarCode code;
  code.n = n;
  code.m = log2_exact(n);
  code.k = n - frozen_count;
  code.design_erasure = design_erasure;
  code.frozen = std::move(mask);
  return code;
}

std::string PolarCode::mask_line() const {
  std::string line(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (frozen[i]) line[i] = '1';
  }
  return line;
}

std::vector<std::uint8_t> PolarCode::parse_mask_line(std::string_view line) {
  std::vector<std::uint8_t> mask(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '0') {
      mask[i] = 0;
    } else if (line[i] == '1') {
      mask[i] = 1;
    } else {
      throw std::invalid_argument("frozen mask line may contain only '0'/'1'");
    }
  }
  return mask;
}

void polar_transform(BitVector& bits) {
  require_power_of_two(bits.size());
  std::size_t n = bits.size();
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) bits[j] ^= bits[j + h];
    }
  }
}

BitVector encode(const PolarCode& code, const BitVector& u) {
  if (u.size() != code.n) {
    throw std::invalid_argument("message length does not match the code");
  }
  for (std::size_t i = 0; i < code.n; ++i) {
    if (code.frozen[i] && u[i] != 0) {
      throw std::invalid_argument("frozen positions must carry zero");
    }
  }
  BitVector x = u;
  polar_transform(x);
  return x;
}

BitVector recover_message(const PolarCode& code, const BitVector& x) {
  if (x.size() != code.n) {
    throw std::invalid_argument("codeword length does not match the code");
  }
  BitVector u = x;
  polar_transform(u);
  BitVector info;
  info.reserve(code.k);
  for (std::size_t i = 0; i < code.n; ++i) {
    if (!code.frozen[i]) info.push_back(u[i]);
  }
  return info;
}

ParityCheck ParityCheck::derive(const PolarCode& code) {
  ParityCheck h;
  h.n_ = code.n;
  h.cols_ = code.frozen_count();
  h.words_ = (code.n + 63) / 64;
  h.columns_.assign(h.cols_ * h.words_, 0);

  std::vector<std::size_t> frozen_idx;
  frozen_idx.reserve(h.cols_);
  for (std::size_t i = 0; i < code.n; ++i) {
    if (code.frozen[i]) frozen_idx.push_back(i);
  }

  // Row i of the transform, read off at the frozen columns.
  BitVector row(code.n);
  for (std::size_t i = 0; i < code.n; ++i) {
    std::fill(row.begin(), row.end(), 0);
    row[i] = 1;
    polar_transform(row);
    for (std::size_t c = 0; c < frozen_idx.size(); ++c) {
      if (row[frozen_idx[c]]) {
        h.columns_[c * h.words_ + i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
  return h;
}

bool ParityCheck::check(const BitVector& x) const {
  std::vector<std::uint64_t> packed;
  return check(x, packed);
}

bool ParityCheck::check(const BitVector& x,
                        std::vector<std::uint64_t>& packed) const {
  if (x.size() != n_) {
    throw std::invalid_argument("codeword length does not match H");
  }
  packed.assign(words_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i]) packed[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::uint64_t* col = columns_.data() + c * words_;
    std::uint64_t fold = 0;
    for (std::size_t w = 0; w < words_; ++w) fold ^= packed[w] & col[w];
    if (std::popcount(fold) & 1) return false;
  }
  return true;
}

int ParityCheck::syndrome_bit(const BitVector& x, std::size_t col) const {
  if (x.size() != n_) {
    throw std::invalid_argument("codeword length does not match H");
  }
  const std::uint64_t* c = columns_.data() + col * words_;
  int bit = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] && ((c[i / 64] >> (i % 64)) & 1)) bit ^= 1;
  }
  return bit;
}

int ParityCheck::entry(std::size_t row, std::size_t col) const {
  return static_cast<int>(
      (columns_[col * words_ + row / 64] >> (row % 64)) & 1);
}

bool check_codeword(const BitVector& x, const ParityCheck& h) {
  return h.check(x);
}

std::string pack_bits_hex(const BitVector& bits) {
  static const char* digits = "0123456789abcdef";
  std::string out((bits.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      std::size_t d = i / 4;
      unsigned v = static_cast<unsigned>(out[d] <= '9' ? out[d] - '0'
                                                       : out[d] - 'a' + 10);
      v |= 1u << (3 - i % 4);
      out[d] = digits[v];
    }
  }
  return out;
}

}  // namespace xjbp
