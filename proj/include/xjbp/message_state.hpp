#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xjbp/polar_code.hpp"

namespace xjbp {

// Dense L/R message lattice over the (m+1)-column factor graph of an
// n = 2^m polar code. Column 0 holds the leaf-side priors, column m the
// channel LLRs. Entry (i, c) of either direction lives at [c*n + i].
class MessageState {
 public:
  MessageState(std::size_t n, unsigned m);

  std::size_t n() const { return n_; }
  unsigned m() const { return m_; }

  double* l_col(unsigned c) { return l_.data() + std::size_t{c} * n_; }
  double* r_col(unsigned c) { return r_.data() + std::size_t{c} * n_; }
  const double* l_col(unsigned c) const { return l_.data() + std::size_t{c} * n_; }
  const double* r_col(unsigned c) const { return r_.data() + std::size_t{c} * n_; }

  double& l(std::size_t i, unsigned c) { return l_[std::size_t{c} * n_ + i]; }
  double& r(std::size_t i, unsigned c) { return r_[std::size_t{c} * n_ + i]; }
  double l(std::size_t i, unsigned c) const { return l_[std::size_t{c} * n_ + i]; }
  double r(std::size_t i, unsigned c) const { return r_[std::size_t{c} * n_ + i]; }

  std::span<double> l_data() { return l_; }
  std::span<double> r_data() { return r_; }
  std::span<const double> l_data() const { return l_; }
  std::span<const double> r_data() const { return r_; }

  // False for states driven over a pruned factor graph, where the leaf-side
  // L column is never computed.
  bool message_llr_supported() const { return message_llr_supported_; }
  void set_message_llr_supported(bool v) { message_llr_supported_ = v; }

 private:
  std::size_t n_;
  unsigned m_;
  bool message_llr_supported_ = true;
  std::vector<double> l_, r_;
};

// Priors: channel LLRs into L column m; +kSat at frozen and 0 at information
// leaves into R column 0; every other entry zero. Rejects a length mismatch
// or a non-finite channel LLR.
MessageState init_messages(const PolarCode& code,
                           std::span<const double> channel_llrs);
void init_messages_into(const PolarCode& code,
                        std::span<const double> channel_llrs,
                        MessageState& state);

// Saturated elementwise R + L on the channel-side column.
std::vector<double> posterior_codeword_llr(const MessageState& state);

// Leaf-side L column; throws std::logic_error for pruned-graph states.
std::vector<double> posterior_message_llr(const MessageState& state);

// One processing element: stage s (0-based, s < m) connects columns s and
// s+1 at rows top and top+2^s. Bit s of top must be zero.
struct PeIndex {
  unsigned stage;
  std::size_t top;
  std::size_t offset() const { return std::size_t{1} << stage; }
};

// Reference single-PE updates; the decoder uses the batch kernels, which
// must agree with these bit for bit.
void update_left(PeIndex pe, MessageState& state, double alpha = 1.0);
void update_right(PeIndex pe, MessageState& state, double alpha = 1.0);

}  // namespace xjbp
