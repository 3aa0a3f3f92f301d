#include "xjbp/message_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xjbp/kernels.hpp"

namespace xjbp {

MessageState::MessageState(std::size_t n, unsigned m)
    : n_(n),
      m_(m),
      l_(std::size_t{m + 1} * n, 0.0),
      r_(std::size_t{m + 1} * n, 0.0) {}

void init_messages_into(const PolarCode& code,
                        std::span<const double> channel_llrs,
                        MessageState& state) {
  if (channel_llrs.size() != code.n) {
    throw std::invalid_argument("channel LLR length does not match the code");
  }
  for (double v : channel_llrs) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("channel LLRs must be finite");
    }
  }
  if (state.n() != code.n || state.m() != code.m) {
    throw std::invalid_argument("message state shape does not match the code");
  }
  std::fill(state.l_data().begin(), state.l_data().end(), 0.0);
  std::fill(state.r_data().begin(), state.r_data().end(), 0.0);
  std::copy(channel_llrs.begin(), channel_llrs.end(), state.l_col(code.m));
  double* priors = state.r_col(0);
  for (std::size_t i = 0; i < code.n; ++i) {
    priors[i] = code.frozen[i] ? kSat : 0.0;
  }
  state.set_message_llr_supported(true);
}

MessageState init_messages(const PolarCode& code,
                           std::span<const double> channel_llrs) {
  MessageState state(code.n, code.m);
  init_messages_into(code, channel_llrs, state);
  return state;
}

std::vector<double> posterior_codeword_llr(const MessageState& state) {
  std::vector<double> out(state.n());
  const double* r = state.r_col(state.m());
  const double* l = state.l_col(state.m());
  for (std::size_t i = 0; i < state.n(); ++i) out[i] = sat_add(r[i], l[i]);
  return out;
}

std::vector<double> posterior_message_llr(const MessageState& state) {
  if (!state.message_llr_supported()) {
    throw std::logic_error(
        "message-side LLRs are not computed on the pruned factor graph");
  }
  const double* l = state.l_col(0);
  return std::vector<double>(l, l + state.n());
}

void update_left(PeIndex pe, MessageState& state, double alpha) {
  std::size_t o = pe.offset();
  std::size_t i = pe.top;
  double* l_s = state.l_col(pe.stage);
  const double* l_sp1 = state.l_col(pe.stage + 1);
  const double* r_s = state.r_col(pe.stage);
  double a = l_sp1[i];
  double b = l_sp1[i + o];
  double g0 = g_minsum(a, sat_add(b, r_s[i + o]));
  double g1 = g_minsum(r_s[i], a);
  if (alpha != 1.0) {
    g0 *= alpha;
    g1 *= alpha;
  }
  l_s[i] = g0;
  l_s[i + o] = sat_add(g1, b);
}

void update_right(PeIndex pe, MessageState& state, double alpha) {
  std::size_t o = pe.offset();
  std::size_t i = pe.top;
  double* r_sp1 = state.r_col(pe.stage + 1);
  const double* r_s = state.r_col(pe.stage);
  const double* l_sp1 = state.l_col(pe.stage + 1);
  double ra = r_s[i];
  double g0 = g_minsum(ra, sat_add(l_sp1[i + o], r_s[i + o]));
  double g1 = g_minsum(ra, l_sp1[i]);
  if (alpha != 1.0) {
    g0 *= alpha;
    g1 *= alpha;
  }
  r_sp1[i] = g0;
  r_sp1[i + o] = sat_add(g1, r_s[i + o]);
}

}  // namespace xjbp
