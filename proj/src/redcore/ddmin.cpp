#include "drr/redcore/ddmin.hpp"

#include <algorithm>

#include "drr/error.hpp"

namespace drr::redcore {

namespace {

DdminState restart(CandidateList candidates, std::size_t n) {
  DdminState s;
  s.candidates = std::move(candidates);
  s.n = std::min(n, s.candidates.size());
  s.exhausted = s.candidates.empty();
  return s;
}

}  // namespace

DdminState init_ddmin(CandidateList candidates) { return restart(std::move(candidates), 2); }

CandidateList chunk(const DdminState& state, std::size_t i) {
  std::size_t len = state.candidates.size();
  auto begin = state.candidates.begin() + static_cast<std::ptrdiff_t>(i * len / state.n);
  auto end = state.candidates.begin() + static_cast<std::ptrdiff_t>((i + 1) * len / state.n);
  return {begin, end};
}

std::optional<CandidateList> next_candidate(const DdminState& state) {
  if (state.exhausted) return std::nullopt;
  CandidateList part = chunk(state, state.cursor);
  if (state.phase == Phase::Subsets) return part;
  CandidateList rest;
  for (auto c : state.candidates)
    if (std::find(part.begin(), part.end(), c) == part.end()) rest.push_back(c);
  return rest;
}

DdminState update_ddmin(DdminState state, const std::optional<CandidateList>& new_candidates,
                        const oracle::Verdict& verdict) {
  if (state.exhausted) throw StateError("update of an exhausted ddmin state");
  if (verdict.accept) {
    if (!new_candidates) throw StateError("accepted attempt without re-classified candidates");
    if (state.phase == Phase::Subsets) return restart(*new_candidates, 2);
    return restart(*new_candidates, std::max<std::size_t>(2, state.n - 1));
  }

  if (++state.cursor < state.n) return state;
  state.cursor = 0;
  // With two chunks the complements are the subsets again.
  if (state.phase == Phase::Subsets && state.n > 2) {
    state.phase = Phase::Complements;
    return state;
  }
  if (state.n >= state.candidates.size()) {
    state.exhausted = true;
    return state;
  }
  state.phase = Phase::Subsets;
  state.n = std::min(state.n * 2, state.candidates.size());
  return state;
}

}  // namespace drr::redcore
