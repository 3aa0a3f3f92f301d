#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xjbp {

// One bit per byte, values 0 or 1.
using BitVector = std::vector<std::uint8_t>;

// Packs bits into lowercase hex, four bits per digit, first bit at the most
// significant position of the first digit. Trailing bits of a partial nibble
// pad with zeros.
std::string pack_bits_hex(const BitVector& bits);

}  // namespace xjbp
