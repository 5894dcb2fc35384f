#pragma once

#include <optional>
#include <vector>

#include "drr/frontend/syntax.hpp"
#include "drr/oracle/oracle.hpp"

namespace drr::redcore {

using Candidate = frontend::NodeId;
using CandidateList = std::vector<Candidate>;

enum class Phase { Subsets, Complements };

/// Classic ddmin over deletions. In the subsets phase an attempt deletes
/// one of the n chunks; in the complements phase it deletes everything
/// except one chunk.
struct DdminState {
  CandidateList candidates;
  std::size_t n = 0;
  std::size_t cursor = 0;
  Phase phase = Phase::Subsets;
  bool exhausted = true;
};

DdminState init_ddmin(CandidateList candidates);

/// The next set to delete, or nullopt once the state is exhausted.
std::optional<CandidateList> next_candidate(const DdminState& state);

/// Advances past the last attempt. On accept `new_candidates` is the list
/// to continue with and is required (StateError otherwise); on reject it
/// is ignored.
DdminState update_ddmin(DdminState state, const std::optional<CandidateList>& new_candidates,
                        const oracle::Verdict& verdict);

/// The chunk [i*len/n, (i+1)*len/n) of the candidate list.
CandidateList chunk(const DdminState& state, std::size_t i);

}  // namespace drr::redcore
