#include "xjbp/decoder.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace xjbp {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kConventional:
      return "conventional";
    case Variant::kRoundTrip:
      return "roundtrip";
    case Variant::kXjBp:
      return "xjbp";
  }
  return "conventional";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "conventional") return Variant::kConventional;
  if (name == "roundtrip") return Variant::kRoundTrip;
  if (name == "xjbp") return Variant::kXjBp;
  return std::nullopt;
}

DecodeOptions DecodeOptions::for_variant(Variant v) {
  DecodeOptions opts;
  switch (v) {
    case Variant::kConventional:
      opts.schedule = Schedule::kConventional;
      opts.pruning = false;
      break;
    case Variant::kRoundTrip:
      opts.schedule = Schedule::kRoundTrip;
      opts.pruning = false;
      break;
    case Variant::kXjBp:
      opts.schedule = Schedule::kRoundTrip;
      opts.pruning = true;
      break;
  }
  return opts;
}

void DecodeOptions::validate() const {
  if (max_iters < 1) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  if (pruning && schedule != Schedule::kRoundTrip) {
    throw std::invalid_argument("pruned decoding requires round-trip scheduling");
  }
  if (kernel == KernelKind::kScaledMinSum &&
      !(sms_alpha > 0.0 && sms_alpha <= 1.0)) {
    throw std::invalid_argument("scale factor must lie in (0, 1]");
  }
}

BitVector hard_decision(std::span<const double> llrs) {
  BitVector bits(llrs.size());
  hard_decision_into(llrs, bits);
  return bits;
}

void hard_decision_into(std::span<const double> llrs, BitVector& out) {
  out.resize(llrs.size());
  for (std::size_t i = 0; i < llrs.size(); ++i) {
    out[i] = llrs[i] > 0.0 ? 0 : 1;
  }
}

Decoder::Decoder(PolarCode code, DecodeOptions opts)
    : code_(std::move(code)), opts_(opts) {
  opts_.validate();
  kernels_ = &select_kernels(opts_.backend);
  alpha_ = opts_.kernel == KernelKind::kScaledMinSum ? opts_.sms_alpha : 1.0;

  if (opts_.pruning) {
    tree_ = ConstituentTree::classify(code_);
    for (const auto& node : tree_->nodes()) {
      switch (node.kind) {
        case NodeKind::kRep:
        case NodeKind::kSpc:
          express_.push_back(node);
          break;
        case NodeKind::kN0:
          pinned_.push_back(node);
          break;
        default:
          break;
      }
    }
  }

  // A PE at stage s spans a dyadic block of 2^(s+1) leaves; it lies inside a
  // constituent subtree exactly when one node covers the whole block. Those
  // PEs are never evaluated.
  std::vector<std::size_t> owner_size(code_.n, 1);
  if (tree_) {
    for (const auto& node : tree_->nodes()) {
      for (std::size_t i = 0; i < node.size; ++i) {
        owner_size[node.leaf_start + i] = node.size;
      }
    }
  }
  stage_runs_.resize(code_.m);
  std::uint64_t plain_pes = 0;
  for (unsigned s = 0; s < code_.m; ++s) {
    std::size_t o = std::size_t{1} << s;
    for (std::size_t start = 0; start < code_.n; start += 2 * o) {
      if (owner_size[start] >= 2 * o) continue;
      stage_runs_[s].push_back(
          {static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(o)});
      plain_pes += o;
    }
  }
  full_leaf_reach_ =
      !stage_runs_.empty() && stage_runs_[0].size() * 2 == code_.n;

  // One unit per directed message through a plain PE (two L plus two R per
  // PE per iteration), 2*size-1 per express root, nothing for N0/N1. The
  // SMS cost model charges one extra unit per scaled message.
  std::uint64_t express_units = 0;
  for (const auto& node : express_) {
    express_units += 2 * static_cast<std::uint64_t>(node.size) - 1;
  }
  std::uint64_t plain_messages = 4 * plain_pes;
  if (opts_.count_scaling_units && opts_.kernel == KernelKind::kScaledMinSum) {
    plain_messages *= 2;
  }
  units_per_iter_ = plain_messages + express_units;

  parity_ = ParityCheck::derive(code_);
}

MessageState Decoder::make_scratch() const {
  return MessageState(code_.n, code_.m);
}

void Decoder::init_state(std::span<const double> channel_llrs,
                         MessageState& state) const {
  init_messages_into(code_, channel_llrs, state);
  // Certainty is pinned over entire all-frozen subtrees so the right pass
  // can start from their roots without recomputation.
  for (const auto& node : pinned_) {
    for (unsigned c = 0; c <= node.stage; ++c) {
      double* r = state.r_col(c) + node.leaf_start;
      std::fill(r, r + node.size, kSat);
    }
  }
  state.set_message_llr_supported(full_leaf_reach_);
}

void Decoder::run_iteration(MessageState& state) const {
  unsigned m = code_.m;
  if (opts_.schedule == Schedule::kConventional) {
    // One left-to-right sweep; both directions at each stage. The L and R
    // writes of a stage touch different columns, so their order within the
    // stage is immaterial.
    for (unsigned s = 0; s < m; ++s) {
      double* l_s = state.l_col(s);
      double* r_sp1 = state.r_col(s + 1);
      const double* l_sp1 = state.l_col(s + 1);
      const double* r_s = state.r_col(s);
      for (const Run& run : stage_runs_[s]) {
        kernels_->update_left_run(l_s, l_sp1, r_s, run.top, run.len,
                                  std::size_t{1} << s, alpha_);
        kernels_->update_right_run(r_sp1, r_s, l_sp1, run.top, run.len,
                                   std::size_t{1} << s, alpha_);
      }
    }
    return;
  }

  // Round trip: all L messages right-to-left, then all R messages
  // left-to-right. On the pruned graph the left pass stops at constituent
  // roots, where the express rules produce the turnaround R messages.
  for (unsigned s = m; s-- > 0;) {
    double* l_s = state.l_col(s);
    const double* l_sp1 = state.l_col(s + 1);
    const double* r_s = state.r_col(s);
    for (const Run& run : stage_runs_[s]) {
      kernels_->update_left_run(l_s, l_sp1, r_s, run.top, run.len,
                                std::size_t{1} << s, alpha_);
    }
  }
  for (const auto& node : express_) {
    const double* l = state.l_col(node.stage) + node.leaf_start;
    double* r = state.r_col(node.stage) + node.leaf_start;
    if (node.kind == NodeKind::kRep) {
      rep_update_span(l, r, node.size);
    } else {
      spc_update_span(l, r, node.size);
    }
  }
  for (unsigned s = 0; s < m; ++s) {
    double* r_sp1 = state.r_col(s + 1);
    const double* r_s = state.r_col(s);
    const double* l_sp1 = state.l_col(s + 1);
    for (const Run& run : stage_runs_[s]) {
      kernels_->update_right_run(r_sp1, r_s, l_sp1, run.top, run.len,
                                 std::size_t{1} << s, alpha_);
    }
  }
}

DecodeResult Decoder::decode(std::span<const double> channel_llrs) const {
  MessageState scratch = make_scratch();
  return decode(channel_llrs, scratch);
}

DecodeResult Decoder::decode(std::span<const double> channel_llrs,
                             MessageState& state) const {
  init_state(channel_llrs, state);

  std::vector<double> posterior(code_.n);
  std::vector<std::uint64_t> packed;
  BitVector codeword;
  DecodeResult result;

  unsigned executed = 0;
  for (unsigned it = 1; it <= opts_.max_iters; ++it) {
    run_iteration(state);
    executed = it;
    kernels_->saturating_sum(posterior.data(), state.r_col(code_.m),
                             state.l_col(code_.m), code_.n);
    hard_decision_into(posterior, codeword);
    if (opts_.early_termination && parity_.check(codeword, packed)) {
      result.converged = true;
      break;
    }
  }

  result.iterations = executed;
  result.op_units = units_per_iter_ * executed;
  BitVector u = codeword;
  polar_transform(u);
  result.info_bits.reserve(code_.k);
  for (std::size_t i = 0; i < code_.n; ++i) {
    if (!code_.frozen[i]) result.info_bits.push_back(u[i]);
  }
  result.codeword = std::move(codeword);
  return result;
}

std::uint64_t count_units_per_iteration(const PolarCode& code, Variant v) {
  if (v != Variant::kXjBp) {
    return 2ull * code.n * code.m;
  }
  ConstituentTree tree = ConstituentTree::classify(code);
  std::uint64_t pruned_pes = 0;
  std::uint64_t express_units = 0;
  for (const auto& node : tree.nodes()) {
    if (node.kind == NodeKind::kPlain) continue;
    // A node of size 2^t removes the (size/2)*t PEs of its interior.
    pruned_pes += (node.size / 2) * node.stage;
    if (node.kind == NodeKind::kRep || node.kind == NodeKind::kSpc) {
      express_units += 2 * static_cast<std::uint64_t>(node.size) - 1;
    }
  }
  std::uint64_t total_pes = static_cast<std::uint64_t>(code.m) * code.n / 2;
  return 4 * (total_pes - pruned_pes) + express_units;
}

}  // namespace xjbp
