#include "xjbp/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace xjbp {

double CampaignRow::ber() const {
  return static_cast<double>(bit_errors) /
         (static_cast<double>(frames) * static_cast<double>(info_bits));
}

double CampaignRow::fer() const {
  return static_cast<double>(frame_errors) / static_cast<double>(frames);
}

double CampaignRow::mean_iters() const {
  return static_cast<double>(iter_sum) / static_cast<double>(frames);
}

double CampaignRow::mean_op_units() const {
  return static_cast<double>(op_unit_sum) / static_cast<double>(frames);
}

namespace {

struct Partial {
  std::uint64_t frames = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t iter_sum = 0;
  std::uint64_t op_unit_sum = 0;

  void operator+=(const Partial& o) {
    frames += o.frames;
    bit_errors += o.bit_errors;
    frame_errors += o.frame_errors;
    iter_sum += o.iter_sum;
    op_unit_sum += o.op_unit_sum;
  }
};

struct FrameWorker {
  const Decoder* decoder;
  const PolarCode* code;
  ChannelParams channel;
  std::uint64_t base_seed;
  std::uint32_t variant_id;
  double ebno_db;

  MessageState scratch;
  BitVector u;
  BitVector info;
  std::vector<double> llrs;

  explicit FrameWorker(const Decoder& dec, const ChannelParams& ch,
                       std::uint64_t seed, std::uint32_t vid, double ebno)
      : decoder(&dec),
        code(&dec.code()),
        channel(ch),
        base_seed(seed),
        variant_id(vid),
        ebno_db(ebno),
        scratch(dec.make_scratch()),
        llrs(dec.code().n) {}

  void run(std::uint64_t frame, Partial& acc) {
    // The whole frame stream hangs off one seed: message bits first, then
    // the noise draws.
    SplitMix64 rng(frame_seed(base_seed, variant_id, ebno_db, frame));
    u.assign(code->n, 0);
    info.clear();
    for (std::size_t i = 0; i < code->n; ++i) {
      if (!code->frozen[i]) {
        u[i] = static_cast<std::uint8_t>(rng.next() & 1);
        info.push_back(u[i]);
      }
    }
    BitVector x = encode(*code, u);
    GaussianSource noise(rng);
    transmit_into(x, channel, noise, llrs);

    DecodeResult res = decoder->decode(llrs, scratch);

    acc.frames += 1;
    acc.iter_sum += res.iterations;
    acc.op_unit_sum += res.op_units;
    if (res.codeword != x) acc.frame_errors += 1;
    for (std::size_t i = 0; i < info.size(); ++i) {
      if (res.info_bits[i] != info[i]) acc.bit_errors += 1;
    }
  }
};

// Frames are evaluated in fixed-size blocks; the stop rule is re-checked at
// block boundaries only, so the processed frame set never depends on the
// thread count.
constexpr std::uint64_t kFrameBlock = 256;

CampaignRow run_point(const Decoder& decoder, Variant variant, double ebno_db,
                      const CampaignConfig& cfg, unsigned threads) {
  const PolarCode& code = decoder.code();
  ChannelParams channel =
      ChannelParams::make(ebno_db, static_cast<double>(code.k) /
                                       static_cast<double>(code.n));
  std::uint32_t variant_id = static_cast<std::uint32_t>(variant);

  auto t0 = std::chrono::steady_clock::now();
  Partial total;
  std::uint64_t next_frame = 0;
  while (next_frame < cfg.stop.max_frames &&
         (cfg.stop.min_frame_errors == 0 ||
          total.frame_errors < cfg.stop.min_frame_errors)) {
    std::uint64_t count =
        std::min(kFrameBlock, cfg.stop.max_frames - next_frame);
    unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
    if (workers <= 1) {
      FrameWorker worker(decoder, channel, cfg.base_seed, variant_id, ebno_db);
      for (std::uint64_t f = next_frame; f < next_frame + count; ++f) {
        worker.run(f, total);
      }
    } else {
      std::vector<Partial> partials(workers);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned t = 0; t < workers; ++t) {
        std::uint64_t begin = next_frame + count * t / workers;
        std::uint64_t end = next_frame + count * (t + 1) / workers;
        pool.emplace_back([&, t, begin, end] {
          FrameWorker worker(decoder, channel, cfg.base_seed, variant_id,
                             ebno_db);
          for (std::uint64_t f = begin; f < end; ++f) {
            worker.run(f, partials[t]);
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& p : partials) total += p;
    }
    next_frame += count;
  }
  auto t1 = std::chrono::steady_clock::now();

  CampaignRow row;
  row.variant = variant;
  row.ebno_db = ebno_db;
  row.frames = total.frames;
  row.bit_errors = total.bit_errors;
  row.frame_errors = total.frame_errors;
  row.iter_sum = total.iter_sum;
  row.op_unit_sum = total.op_unit_sum;
  row.info_bits = code.k;
  row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return row;
}

}  // namespace

StatsReport run_campaign(const CampaignConfig& cfg) {
  if (cfg.variants.empty()) {
    throw std::invalid_argument("campaign needs at least one variant");
  }
  if (cfg.ebno_list.empty()) {
    throw std::invalid_argument("campaign needs at least one Eb/N0 point");
  }
  if (cfg.stop.max_frames < 1) {
    throw std::invalid_argument("campaign needs max_frames >= 1");
  }
  std::vector<double> ebno = cfg.ebno_list;
  std::sort(ebno.begin(), ebno.end());

  unsigned threads = cfg.threads;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }

  StatsReport report;
  for (Variant v : cfg.variants) {
    DecodeOptions opts = cfg.base_options;
    DecodeOptions shape = DecodeOptions::for_variant(v);
    opts.schedule = shape.schedule;
    opts.pruning = shape.pruning;
    Decoder decoder(cfg.code, opts);
    for (double e : ebno) {
      report.rows.push_back(run_point(decoder, v, e, cfg, threads));
    }
  }
  return report;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_stats_csv(std::ostream& out, const StatsReport& report) {
  out << "variant,ebno_db,frames,bit_errors,frame_errors,ber,fer,"
         "mean_iters,mean_op_units\n";
  for (const auto& row : report.rows) {
    out << variant_name(row.variant) << ',' << format_double(row.ebno_db)
        << ',' << row.frames << ',' << row.bit_errors << ','
        << row.frame_errors << ',' << format_double(row.ber()) << ','
        << format_double(row.fer()) << ',' << format_double(row.mean_iters())
        << ',' << format_double(row.mean_op_units()) << '\n';
  }
}

}  // namespace xjbp
