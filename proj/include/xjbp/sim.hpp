#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xjbp/channel.hpp"
#include "xjbp/decoder.hpp"

namespace xjbp {

struct StopRule {
  std::uint64_t max_frames = 10000;
  std::uint64_t min_frame_errors = 100;  // 0 disables the error-count stop
};

struct CampaignRow {
  Variant variant;
  double ebno_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t iter_sum = 0;
  std::uint64_t op_unit_sum = 0;
  std::size_t info_bits = 0;  // k, for the BER denominator
  double wall_seconds = 0.0;  // informational; excluded from reports

  double ber() const;
  double fer() const;
  double mean_iters() const;
  double mean_op_units() const;
};

struct StatsReport {
  std::vector<CampaignRow> rows;
};

struct CampaignConfig {
  PolarCode code;
  std::vector<Variant> variants;       // report order
  DecodeOptions base_options;          // schedule/pruning set per variant
  std::vector<double> ebno_list;       // run and reported ascending
  StopRule stop;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Monte Carlo run over (variant, ebno) points: random messages, BPSK/AWGN,
// decode, aggregate. Frame seeds depend only on (base_seed, variant, ebno,
// frame index), so results are identical for any thread count.
StatsReport run_campaign(const CampaignConfig& config);

// Exact report format: header
// variant,ebno_db,frames,bit_errors,frame_errors,ber,fer,mean_iters,mean_op_units
// one row per (variant, ebno), variants in declaration order, ebno ascending.
void write_stats_csv(std::ostream& out, const StatsReport& report);

// Locale-independent shortest-ish rendering used by every report writer.
std::string format_double(double v);

}  // namespace xjbp
