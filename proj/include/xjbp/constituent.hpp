#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "xjbp/polar_code.hpp"

namespace xjbp {

// Subtree kinds over the frozen mask: all leaves frozen (N0), none frozen
// (N1), only the last leaf informative (repetition), only the first leaf
// frozen (single parity check), anything else plain.
enum class NodeKind : std::uint8_t { kN0, kN1, kRep, kSpc, kPlain };

const char* node_kind_name(NodeKind kind);

struct ConstituentNode {
  NodeKind kind;
  std::size_t leaf_start;  // 0-based first leaf index
  std::size_t size;        // leaf count, a power of two
  unsigned stage;          // 0-based root column; size == 1 << stage
};

// Maximal-subtree decomposition of a frozen mask: a top-down pass that tests
// kinds in N0, N1, REP, SPC order and stops descending at the first match.
// The size-2 pattern [frozen, info] matches both REP and SPC and is labeled
// REP. Unmatched ranges recurse; unmatched single leaves come out plain.
class ConstituentTree {
 public:
  static ConstituentTree classify(const PolarCode& code);

  const std::vector<ConstituentNode>& nodes() const { return nodes_; }
  std::size_t leaf_count() const { return n_; }

  // size -> count for one non-plain kind.
  const std::map<std::size_t, std::size_t>& census(NodeKind kind) const;
  std::size_t total(NodeKind kind, std::size_t min_size = 2) const;

 private:
  std::size_t n_ = 0;
  std::vector<ConstituentNode> nodes_;
  std::array<std::map<std::size_t, std::size_t>, 4> census_;
};

// Repetition-root update: r[i] = sum of l[k] over k != i, via total minus
// self (2*len - 1 two-input additions), output clamped to +-kSat.
void rep_update_span(const double* l, double* r, std::size_t len);

// Parity-check-root update: r[i] = product of the other signs times the
// minimum of the other magnitudes, tracked with one sign parity and the two
// smallest magnitudes.
void spc_update_span(const double* l, double* r, std::size_t len);

// Validating wrappers; reject len < 2.
std::vector<double> rep_update(std::span<const double> l);
std::vector<double> spc_update(std::span<const double> l);

}  // namespace xjbp
