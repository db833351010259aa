#include "danet/proposal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "danet/numeric.hpp"

namespace danet {
namespace {

// States where the driving parameters give zero mass to every removable
// vertex have no usable CDF; both entry points drop to the uniform proposal
// there so the draw and its reported mass always agree.
bool driving_usable(const StepCache::State& st) {
  return !st.driving_cdf.empty();
}

}  // namespace

ProposedVertex propose_vertex(const StepCache::State& state, Proposal::Kind kind,
                              RngStream& rng) {
  if (state.irreducible()) throw std::logic_error("propose_vertex on an irreducible state");
  std::size_t n = state.removable.size();
  if (kind == Proposal::Kind::uniform_removable || !driving_usable(state)) {
    std::size_t i = rng.uniform_index(n);
    return {state.removable[i], i, -std::log(double(n))};
  }
  double u = rng.uniform();
  auto it = std::upper_bound(state.driving_cdf.begin(), state.driving_cdf.end(), u);
  std::size_t i = std::min<std::size_t>(std::size_t(it - state.driving_cdf.begin()), n - 1);
  return {state.removable[i], i, state.log_w_driving[i] - state.log_driving_sum};
}

double proposal_log_prob(const StepCache::State& state, Proposal::Kind kind,
                         std::uint32_t vertex) {
  auto it = std::lower_bound(state.removable.begin(), state.removable.end(), vertex);
  if (it == state.removable.end() || *it != vertex)
    throw std::logic_error("proposal_log_prob: vertex is not removable here");
  std::size_t i = std::size_t(it - state.removable.begin());
  if (kind == Proposal::Kind::uniform_removable || !driving_usable(state))
    return -std::log(double(state.removable.size()));
  return state.log_w_driving[i] - state.log_driving_sum;
}

}  // namespace danet
