#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "xjbp/constituent.hpp"
#include "xjbp/kernels.hpp"
#include "xjbp/message_state.hpp"
#include "xjbp/polar_code.hpp"

namespace xjbp {

enum class Schedule { kConventional, kRoundTrip };
enum class KernelKind { kMinSum, kScaledMinSum };

// The three decoder configurations under study. XJ-BP is round-trip
// scheduling over the pruned graph with express constituent updates.
enum class Variant { kConventional, kRoundTrip, kXjBp };

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

struct DecodeOptions {
  unsigned max_iters = 60;
  KernelKind kernel = KernelKind::kMinSum;
  double sms_alpha = 0.9375;
  Schedule schedule = Schedule::kRoundTrip;
  bool pruning = false;  // express-journey updates; requires round-trip
  bool early_termination = true;
  // Charge one extra unit per scaled check-node message (SMS cost model).
  bool count_scaling_units = false;
  Backend backend = Backend::kAuto;

  static DecodeOptions for_variant(Variant v);
  void validate() const;  // throws std::invalid_argument
};

struct DecodeResult {
  BitVector codeword;   // hard-decided codeword estimate
  BitVector info_bits;  // k recovered information bits
  unsigned iterations = 0;
  bool converged = false;  // early termination fired
  std::uint64_t op_units = 0;
};

// bit = 0 where llr > 0, else 1 (exact zero decides 1).
BitVector hard_decision(std::span<const double> llrs);
void hard_decision_into(std::span<const double> llrs, BitVector& out);

class Decoder {
 public:
  Decoder(PolarCode code, DecodeOptions opts);

  DecodeResult decode(std::span<const double> channel_llrs) const;
  DecodeResult decode(std::span<const double> channel_llrs,
                      MessageState& scratch) const;

  MessageState make_scratch() const;
  std::uint64_t units_per_iteration() const { return units_per_iter_; }
  const PolarCode& code() const { return code_; }
  const DecodeOptions& options() const { return opts_; }
  const ConstituentTree* tree() const {
    return tree_ ? &*tree_ : nullptr;
  }
  const ParityCheck& parity() const { return parity_; }

  // Exposed for schedule-level tests.
  void init_state(std::span<const double> channel_llrs,
                  MessageState& state) const;
  void run_iteration(MessageState& state) const;

 private:
  struct Run {
    std::uint32_t top;
    std::uint32_t len;
  };

  PolarCode code_;
  DecodeOptions opts_;
  std::optional<ConstituentTree> tree_;
  ParityCheck parity_;
  const Kernels* kernels_;
  double alpha_;  // 1.0 on the min-sum path
  std::vector<std::vector<Run>> stage_runs_;  // per stage 0..m-1
  std::vector<ConstituentNode> express_;      // REP and SPC roots
  std::vector<ConstituentNode> pinned_;       // N0 roots
  std::uint64_t units_per_iter_ = 0;
  bool full_leaf_reach_ = true;
};

// Per-iteration operation units of a variant on a code: one unit per
// directed message through a plain PE, 2*size-1 per express REP/SPC root,
// nothing for N0/N1 subtrees.
std::uint64_t count_units_per_iteration(const PolarCode& code, Variant v);

}  // namespace xjbp
