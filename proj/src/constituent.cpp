#include "xjbp/constituent.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "xjbp/kernels.hpp"

namespace xjbp {

namespace {

NodeKind match_kind(const std::uint8_t* mask, std::size_t start,
                    std::size_t size, std::size_t frozen_in_range) {
  if (frozen_in_range == size) return NodeKind::kN0;
  if (frozen_in_range == 0) return NodeKind::kN1;
  // [frozen, info] at size 2 matches both; REP wins by test order.
  if (frozen_in_range == size - 1 && mask[start + size - 1] == 0) {
    return NodeKind::kRep;
  }
  if (frozen_in_range == 1 && mask[start] == 1) return NodeKind::kSpc;
  return NodeKind::kPlain;
}

struct ClassifyCtx {
  const std::uint8_t* mask;
  const std::size_t* prefix;  // prefix[i] = frozen bits before index i
  std::vector<ConstituentNode>* out;
};

void classify_rec(const ClassifyCtx& ctx, std::size_t start, std::size_t size,
                  unsigned stage) {
  if (size >= 2) {
    std::size_t frozen = ctx.prefix[start + size] - ctx.prefix[start];
    NodeKind kind = match_kind(ctx.mask, start, size, frozen);
    if (kind != NodeKind::kPlain) {
      ctx.out->push_back({kind, start, size, stage});
      return;
    }
  }
  if (size == 1) {
    ctx.out->push_back({NodeKind::kPlain, start, 1, 0});
    return;
  }
  classify_rec(ctx, start, size / 2, stage - 1);
  classify_rec(ctx, start + size / 2, size / 2, stage - 1);
}

}  // namespace

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kN0:
      return "N0";
    case NodeKind::kN1:
      return "N1";
    case NodeKind::kRep:
      return "REP";
    case NodeKind::kSpc:
      return "SPC";
    case NodeKind::kPlain:
      return "PLAIN";
  }
  return "PLAIN";
}

ConstituentTree ConstituentTree::classify(const PolarCode& code) {
  ConstituentTree tree;
  tree.n_ = code.n;

  std::vector<std::size_t> prefix(code.n + 1, 0);
  for (std::size_t i = 0; i < code.n; ++i) {
    prefix[i + 1] = prefix[i] + code.frozen[i];
  }

  ClassifyCtx ctx{code.frozen.data(), prefix.data(), &tree.nodes_};
  classify_rec(ctx, 0, code.n, code.m);

  for (const auto& node : tree.nodes_) {
    if (node.kind != NodeKind::kPlain) {
      tree.census_[static_cast<std::size_t>(node.kind)][node.size] += 1;
    }
  }
  return tree;
}

const std::map<std::size_t, std::size_t>& ConstituentTree::census(
    NodeKind kind) const {
  return census_[static_cast<std::size_t>(kind)];
}

std::size_t ConstituentTree::total(NodeKind kind, std::size_t min_size) const {
  std::size_t sum = 0;
  for (const auto& [size, count] : census(kind)) {
    if (size >= min_size) sum += count;
  }
  return sum;
}

void rep_update_span(const double* l, double* r, std::size_t len) {
  double total = 0.0;
  for (std::size_t i = 0; i < len; ++i) total += l[i];
  for (std::size_t i = 0; i < len; ++i) {
    r[i] = std::min(std::max(total - l[i], -kSat), kSat);
  }
}

void spc_update_span(const double* l, double* r, std::size_t len) {
  bool parity = false;  // true = product of all signs is negative
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < len; ++i) {
    parity ^= std::signbit(l[i]);
    double a = std::fabs(l[i]);
    if (a < min1) {
      min2 = min1;
      min1 = a;
      argmin = i;
    } else if (a < min2) {
      min2 = a;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    double mag = (i == argmin) ? min2 : min1;
    r[i] = (parity != std::signbit(l[i])) ? -mag : mag;
  }
}

std::vector<double> rep_update(std::span<const double> l) {
  if (l.size() < 2) {
    throw std::invalid_argument("repetition update needs at least 2 inputs");
  }
  std::vector<double> r(l.size());
  rep_update_span(l.data(), r.data(), l.size());
  return r;
}

std::vector<double> spc_update(std::span<const double> l) {
  if (l.size() < 2) {
    throw std::invalid_argument("parity-check update needs at least 2 inputs");
  }
  std::vector<double> r(l.size());
  spc_update_span(l.data(), r.data(), l.size());
  return r;
}

}  // namespace xjbp
