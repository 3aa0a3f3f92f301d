#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xjbp/bits.hpp"

namespace xjbp {

// An (n, k) polar code. The frozen set is chosen on the binary erasure
// channel by evolving the Bhattacharyya parameter of each polarized
// subchannel and freezing the n-k least reliable ones.
struct PolarCode {
  std::size_t n = 0;                 // codeword length, a power of two
  unsigned m = 0;                    // log2(n)
  std::size_t k = 0;                 // information bit count
  std::vector<std::uint8_t> frozen;  // length n, 1 = frozen
  double design_erasure = 0.3;

  std::size_t frozen_count() const { return n - k; }

  // Ties in reliability freeze the lower index.
  static PolarCode construct(std::size_t n, std::size_t k,
                             double design_erasure = 0.3);

  // Adopts an explicit frozen mask (1 = frozen); k is inferred.
  static PolarCode from_mask(std::vector<std::uint8_t> mask,
                             double design_erasure = 0.3);

  // One line of n characters, '0' = information, '1' = frozen.
  std::string mask_line() const;
  static std::vector<std::uint8_t> parse_mask_line(std::string_view line);
};

// Bhattacharyya parameters of the n polarized BEC subchannels, natural index
// order. Bits of the index are consumed most significant first: a 0 bit maps
// z to 2z - z^2, a 1 bit maps z to z^2.
std::vector<long double> bec_reliability(std::size_t n, double design_erasure);

// In-place multiply by the log2(n)-fold Kronecker power of [[1,0],[1,1]]
// over GF(2). Self-inverse: applying it twice restores the input.
void polar_transform(BitVector& bits);

// x = u * G. Rejects u of the wrong length or with a nonzero frozen bit.
BitVector encode(const PolarCode& code, const BitVector& u);

// Recovers the k information bits of a codeword by re-applying the
// transform and reading the non-frozen positions.
BitVector recover_message(const PolarCode& code, const BitVector& x);

// Parity check matrix: the columns of the transform at frozen indices.
// x is a codeword iff every syndrome bit of x*H is zero.
class ParityCheck {
 public:
  static ParityCheck derive(const PolarCode& code);

  std::size_t code_length() const { return n_; }
  std::size_t syndrome_bits() const { return cols_; }

  bool check(const BitVector& x) const;
  // Hot-path variant; `packed` is caller-owned scratch, resized as needed.
  bool check(const BitVector& x, std::vector<std::uint64_t>& packed) const;

  int syndrome_bit(const BitVector& x, std::size_t col) const;
  int entry(std::size_t row, std::size_t col) const;

 private:
  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;                // 64-bit words per column
  std::vector<std::uint64_t> columns_;   // column-major, packed over rows
};

bool check_codeword(const BitVector& x, const ParityCheck& h);

}  // namespace xjbp
