// Command-line front end: code construction, encoding, constituent census,
// per-iteration operation counts, frame decoding, and Monte Carlo campaigns.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xjbp/channel.hpp"
#include "xjbp/constituent.hpp"
#include "xjbp/decoder.hpp"
#include "xjbp/polar_code.hpp"
#include "xjbp/sim.hpp"

namespace {

using json = nlohmann::json;
using namespace xjbp;

// Malformed input data; reported with exit code 2. Configuration problems
// stay std::invalid_argument and exit with 1.
class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodeArgs {
  std::size_t n = 0;
  std::size_t k = 0;
  double erasure = 0.3;
  std::string mask_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "codeword length (power of two)");
    cmd->add_option("--k", k, "information bit count");
    cmd->add_option("--erasure", erasure,
                    "design erasure probability for construction");
    cmd->add_option("--mask", mask_path,
                    "frozen mask file ('0' info / '1' frozen), overrides "
                    "--n/--k/--erasure");
  }

  PolarCode resolve(bool allow_stdin_mask) const {
    if (!mask_path.empty()) {
      std::ifstream in(mask_path);
      if (!in) throw DataError(mask_path + ": cannot open mask file");
      return read_mask_stream(in, mask_path);
    }
    if (n != 0 || k != 0) {
      return PolarCode::construct(n, k, erasure);
    }
    if (allow_stdin_mask) {
      return read_mask_stream(std::cin, "<stdin>");
    }
    throw std::invalid_argument("specify --n/--k or --mask");
  }

  PolarCode read_mask_stream(std::istream& in, const std::string& name) const {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (line.empty()) continue;
      try {
        return PolarCode::from_mask(PolarCode::parse_mask_line(line), erasure);
      } catch (const std::invalid_argument& e) {
        throw DataError(name + ":" + std::to_string(line_no) + ": " +
                        e.what());
      }
    }
    throw DataError(name + ": no mask line found");
  }
};

struct DecoderArgs {
  std::string variant = "xjbp";
  std::string kernel = "ms";
  double alpha = 0.9375;
  unsigned max_iters = 60;
  bool no_early_term = false;
  bool sms_cost = false;
  std::string backend = "auto";

  void attach(CLI::App* cmd, bool with_variant) {
    if (with_variant) {
      cmd->add_option("--variant", variant,
                      "decoder variant: conventional|roundtrip|xjbp");
    }
    cmd->add_option("--kernel", kernel, "check-node kernel: ms|sms");
    cmd->add_option("--alpha", alpha, "scaled min-sum factor in (0,1]");
    cmd->add_option("--max-iters", max_iters, "iteration cap");
    cmd->add_flag("--no-early-term", no_early_term,
                  "disable the syndrome-based early stop");
    cmd->add_flag("--sms-cost", sms_cost,
                  "charge one extra unit per scaled message in op counts");
    cmd->add_option("--backend", backend, "kernel backend: auto|scalar|avx2");
  }

  DecodeOptions options(Variant v) const {
    DecodeOptions opts = DecodeOptions::for_variant(v);
    if (kernel == "ms") {
      opts.kernel = KernelKind::kMinSum;
    } else if (kernel == "sms") {
      opts.kernel = KernelKind::kScaledMinSum;
    } else {
      throw std::invalid_argument("unknown kernel: " + kernel);
    }
    opts.sms_alpha = alpha;
    opts.max_iters = max_iters;
    opts.early_termination = !no_early_term;
    opts.count_scaling_units = sms_cost;
    opts.backend = parse_backend(backend);
    opts.validate();
    return opts;
  }

  Variant parse_variant_or_throw() const {
    auto v = ::xjbp::parse_variant(variant);
    if (!v) throw std::invalid_argument("unknown variant: " + variant);
    return *v;
  }
};

struct OutputFile {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw DataError(path + ": cannot open for writing");
    stream = &file;
  }
};

std::istream* open_input(const std::string& path, std::ifstream& file) {
  if (path.empty() || path == "-") return &std::cin;
  file.open(path);
  if (!file) throw DataError(path + ": cannot open input file");
  return &file;
}

std::string input_name(const std::string& path) {
  return path.empty() || path == "-" ? "<stdin>" : path;
}

BitVector parse_bit_line(const std::string& line, const std::string& where) {
  BitVector bits(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '0') {
      bits[i] = 0;
    } else if (line[i] == '1') {
      bits[i] = 1;
    } else {
      throw DataError(where + ": message lines may contain only '0'/'1'");
    }
  }
  return bits;
}

int run_construct(const CodeArgs& code_args, const std::string& out_path) {
  PolarCode code = code_args.resolve(false);
  OutputFile out;
  out.open(out_path);
  *out.stream << code.mask_line() << '\n';
  return 0;
}

int run_encode(const CodeArgs& code_args, const std::string& in_path,
               const std::string& out_path) {
  PolarCode code = code_args.resolve(false);
  std::ifstream file;
  std::istream* in = open_input(in_path, file);
  OutputFile out;
  out.open(out_path);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::string where = input_name(in_path) + ":" + std::to_string(line_no);
    BitVector bits = parse_bit_line(line, where);
    BitVector u;
    if (bits.size() == code.k) {
      u.assign(code.n, 0);
      std::size_t j = 0;
      for (std::size_t i = 0; i < code.n; ++i) {
        if (!code.frozen[i]) u[i] = bits[j++];
      }
    } else if (bits.size() == code.n) {
      u = std::move(bits);
    } else {
      throw DataError(where + ": expected " + std::to_string(code.k) + " or " +
                      std::to_string(code.n) + " bits, got " +
                      std::to_string(line.size()));
    }
    BitVector x;
    try {
      x = encode(code, u);
    } catch (const std::invalid_argument& e) {
      throw DataError(where + ": " + e.what());
    }
    std::string text(x.size(), '0');
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i]) text[i] = '1';
    }
    *out.stream << text << '\n';
  }
  return 0;
}

int run_classify(const CodeArgs& code_args, const std::string& out_path) {
  PolarCode code = code_args.resolve(true);
  ConstituentTree tree = ConstituentTree::classify(code);
  OutputFile out;
  out.open(out_path);
  *out.stream << "kind,size,count\n";
  for (NodeKind kind :
       {NodeKind::kN0, NodeKind::kN1, NodeKind::kRep, NodeKind::kSpc}) {
    for (const auto& [size, count] : tree.census(kind)) {
      *out.stream << node_kind_name(kind) << ',' << size << ',' << count
                  << '\n';
    }
  }
  return 0;
}

int run_count_ops(const CodeArgs& code_args, const std::string& out_path) {
  PolarCode code = code_args.resolve(false);
  OutputFile out;
  out.open(out_path);
  *out.stream << "variant,units_per_iteration\n";
  for (Variant v :
       {Variant::kConventional, Variant::kRoundTrip, Variant::kXjBp}) {
    *out.stream << variant_name(v) << ','
                << count_units_per_iteration(code, v) << '\n';
  }
  return 0;
}

int run_decode(const CodeArgs& code_args, const DecoderArgs& dec_args,
               const std::string& in_path, const std::string& out_path) {
  PolarCode code = code_args.resolve(false);
  Variant v = dec_args.parse_variant_or_throw();
  Decoder decoder(code, dec_args.options(v));
  MessageState scratch = decoder.make_scratch();

  std::ifstream file;
  std::istream* in = open_input(in_path, file);
  OutputFile out;
  out.open(out_path);
  *out.stream << "frame_index,converged,iterations,op_units,codeword_hex\n";

  std::string line;
  std::size_t line_no = 0;
  std::uint64_t frame = 0;
  std::vector<double> llrs;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = input_name(in_path) + ":" + std::to_string(line_no);
    llrs.clear();
    const char* p = line.c_str();
    char* end = nullptr;
    while (*p) {
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
      if (!*p) break;
      double value = std::strtod(p, &end);
      if (end == p) throw DataError(where + ": malformed LLR value");
      llrs.push_back(value);
      p = end;
    }
    if (llrs.size() != code.n) {
      throw DataError(where + ": expected " + std::to_string(code.n) +
                      " LLR values, got " + std::to_string(llrs.size()));
    }
    DecodeResult res;
    try {
      res = decoder.decode(llrs, scratch);
    } catch (const std::invalid_argument& e) {
      throw DataError(where + ": " + e.what());
    }
    *out.stream << frame << ',' << (res.converged ? 1 : 0) << ','
                << res.iterations << ',' << res.op_units << ','
                << pack_bits_hex(res.codeword) << '\n';
    ++frame;
  }
  return 0;
}

struct SimulateArgs {
  CodeArgs code;
  DecoderArgs decoder;
  std::vector<std::string> variants{"conventional", "roundtrip", "xjbp"};
  std::vector<double> ebno;
  std::uint64_t frames = 10000;
  std::uint64_t min_errors = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_path;
  std::string json_path;
};

json simulate_config_json(const SimulateArgs& args, const PolarCode& code) {
  json cfg;
  cfg["n"] = code.n;
  cfg["k"] = code.k;
  cfg["erasure"] = code.design_erasure;
  if (!args.code.mask_path.empty()) cfg["mask"] = code.mask_line();
  cfg["variants"] = args.variants;
  cfg["kernel"] = args.decoder.kernel;
  cfg["alpha"] = args.decoder.alpha;
  cfg["max_iters"] = args.decoder.max_iters;
  cfg["early_termination"] = !args.decoder.no_early_term;
  cfg["sms_cost"] = args.decoder.sms_cost;
  cfg["backend"] = args.decoder.backend;
  cfg["ebno"] = args.ebno;
  cfg["frames"] = args.frames;
  cfg["min_errors"] = args.min_errors;
  cfg["seed"] = args.seed;
  cfg["threads"] = args.threads;
  cfg["out"] = args.out_path;
  cfg["json"] = args.json_path;
  return cfg;
}

int run_simulate(const SimulateArgs& args) {
  PolarCode code = args.code.resolve(false);

  CampaignConfig cfg;
  cfg.code = code;
  for (const auto& name : args.variants) {
    auto v = parse_variant(name);
    if (!v) throw std::invalid_argument("unknown variant: " + name);
    cfg.variants.push_back(*v);
  }
  cfg.base_options = args.decoder.options(Variant::kRoundTrip);
  cfg.ebno_list = args.ebno;
  cfg.stop.max_frames = args.frames;
  cfg.stop.min_frame_errors = args.min_errors;
  cfg.base_seed = args.seed;
  cfg.threads = args.threads;

  StatsReport report = run_campaign(cfg);

  std::ostringstream csv;
  write_stats_csv(csv, report);
  OutputFile out;
  out.open(args.out_path);
  *out.stream << csv.str();

  if (!args.json_path.empty()) {
    json doc;
    doc["config"] = simulate_config_json(args, code);
    json rows = json::array();
    for (const auto& row : report.rows) {
      json r;
      r["variant"] = variant_name(row.variant);
      r["ebno_db"] = row.ebno_db;
      r["frames"] = row.frames;
      r["bit_errors"] = row.bit_errors;
      r["frame_errors"] = row.frame_errors;
      r["ber"] = row.ber();
      r["fer"] = row.fer();
      r["mean_iters"] = row.mean_iters();
      r["mean_op_units"] = row.mean_op_units();
      rows.push_back(r);
    }
    doc["rows"] = rows;
    std::ofstream jf(args.json_path);
    if (!jf) throw DataError(args.json_path + ": cannot open for writing");
    jf << doc.dump(2) << '\n';
  }

  double wall = 0;
  for (const auto& row : report.rows) wall += row.wall_seconds;
  std::fprintf(stderr, "simulated %zu points in %.1f s\n", report.rows.size(),
               wall);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar-code belief-propagation decoding toolkit"};
  app.require_subcommand(1);

  auto* construct_cmd =
      app.add_subcommand("construct", "emit the frozen mask of a code");
  CodeArgs construct_code;
  construct_code.attach(construct_cmd);
  std::string construct_out;
  construct_cmd->add_option("--out", construct_out, "output path");

  auto* encode_cmd = app.add_subcommand(
      "encode", "encode message bit lines from stdin or --in");
  CodeArgs encode_code;
  encode_code.attach(encode_cmd);
  std::string encode_in, encode_out;
  encode_cmd->add_option("--in", encode_in, "input path ('-' = stdin)");
  encode_cmd->add_option("--out", encode_out, "output path");

  auto* classify_cmd = app.add_subcommand(
      "classify", "constituent-code census of the frozen mask");
  CodeArgs classify_code;
  classify_code.attach(classify_cmd);
  std::string classify_out;
  classify_cmd->add_option("--out", classify_out, "output path");

  auto* count_cmd = app.add_subcommand(
      "count-ops", "per-iteration operation units of each variant");
  CodeArgs count_code;
  count_code.attach(count_cmd);
  std::string count_out;
  count_cmd->add_option("--out", count_out, "output path");

  auto* decode_cmd = app.add_subcommand(
      "decode", "decode LLR frames (one frame per line) to CSV");
  CodeArgs decode_code;
  decode_code.attach(decode_cmd);
  DecoderArgs decode_decoder;
  decode_decoder.attach(decode_cmd, true);
  std::string decode_in, decode_out;
  decode_cmd->add_option("--in", decode_in, "input path ('-' = stdin)");
  decode_cmd->add_option("--out", decode_out, "output path");

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo FER/BER/iteration/op-unit campaign");
  SimulateArgs sim_args;
  sim_args.code.attach(sim_cmd);
  sim_args.decoder.attach(sim_cmd, false);
  sim_cmd->add_option("--variants", sim_args.variants, "comma-separated list")
      ->delimiter(',');
  sim_cmd->add_option("--ebno", sim_args.ebno, "Eb/N0 points in dB")
      ->delimiter(',')
      ->required();
  sim_cmd->add_option("--frames", sim_args.frames, "max frames per point");
  sim_cmd->add_option("--min-errors", sim_args.min_errors,
                      "stop a point after this many frame errors (0 = never)");
  sim_cmd->add_option("--seed", sim_args.seed, "base seed");
  sim_cmd->add_option("--threads", sim_args.threads,
                      "worker threads (0 = hardware)");
  sim_cmd->add_option("--out", sim_args.out_path, "CSV output path");
  sim_cmd->add_option("--json", sim_args.json_path,
                      "JSON mirror with embedded config");

  try {
    app.parse(argc, argv);
    if (construct_cmd->parsed()) {
      return run_construct(construct_code, construct_out);
    }
    if (encode_cmd->parsed()) {
      return run_encode(encode_code, encode_in, encode_out);
    }
    if (classify_cmd->parsed()) {
      return run_classify(classify_code, classify_out);
    }
    if (count_cmd->parsed()) {
      return run_count_ops(count_code, count_out);
    }
    if (decode_cmd->parsed()) {
      return run_decode(decode_code, decode_decoder, decode_in, decode_out);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(sim_args);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
