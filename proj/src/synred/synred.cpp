#include "drr/synred/synred.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "drr/error.hpp"
#include "drr/frontend/edit.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/redcore/ddmin.hpp"

namespace drr::synred {

using frontend::Node;
using frontend::NodeKind;
using frontend::SyntaxTree;
using Clock = std::chrono::steady_clock;

const char* to_string(SiteKind kind) {
  return kind == SiteKind::ListElement ? "list-element" : "optional-subtree";
}

namespace {

bool is_list(NodeKind k) {
  return k == NodeKind::Program || k == NodeKind::Block || k == NodeKind::StructDecl;
}

void collect(const Node& n, std::vector<DeletionSite>& out) {
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    const Node& c = n.children[i];
    if (c.is_token()) continue;
    if (is_list(n.kind)) {
      out.push_back({c.id, SiteKind::ListElement, n.id, c.token_count});
    } else if (c.kind == NodeKind::ElseClause || c.kind == NodeKind::Initializer ||
               c.kind == NodeKind::ParamList ||
               (n.kind == NodeKind::ReturnStmt && i == 1)) {
      out.push_back({c.id, SiteKind::OptionalSubtree, n.id, c.token_count});
    }
    collect(c, out);
  }
}

struct Attempt {
  std::optional<SyntaxTree> tree;
  oracle::Verdict verdict{false, oracle::VerdictSource::PrecheckReject};
};

class Pass {
 public:
  Pass(SyntaxTree& tree, std::size_t& tokens, oracle::Oracle& oracle, redcore::StageReport& report)
      : tree_(tree), tokens_(tokens), oracle_(oracle), report_(report) {}

  /// True when the deletion was accepted and applied.
  bool try_delete(const redcore::CandidateList& ids) {
    auto t0 = Clock::now();
    redcore::IterationRecord rec;
    rec.stage = "syn";
    rec.iter = report_.iterations.size() + 1;
    rec.candidate_ids = ids;
    rec.tokens_after = tokens_;
    oracle::Verdict verdict{false, oracle::VerdictSource::PrecheckReject};
    std::optional<SyntaxTree> next;
    try {
      next = frontend::remove_nodes(tree_, {ids.begin(), ids.end()});
    } catch (const EditError& e) {
      rec.note = e.what();
    }
    if (next) {
      rec.tokens_after = frontend::count_tokens(*next);
      rec.compiles = frontend::compiles(*next);
      if (rec.tokens_after >= tokens_)
        rec.no_progress = true;
      else
        verdict = oracle_.query(frontend::print(*next));
    }
    rec.accept = verdict.accept;
    rec.source = verdict.source;
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report_.iterations.push_back(std::move(rec));
    if (!verdict.accept) return false;
    tree_ = std::move(*next);
    tokens_ = frontend::count_tokens(tree_);
    report_.accepted.push_back(frontend::print(tree_));
    return true;
  }

  /// ddmin over the current elements of one sibling list.
  std::size_t reduce_list(NodeId parent) {
    std::size_t accepted = 0;
    auto state = redcore::init_ddmin(elements(parent));
    while (auto attempt = redcore::next_candidate(state)) {
      bool ok = try_delete(*attempt);
      std::optional<redcore::CandidateList> survivors;
      if (ok) {
        ++accepted;
        survivors = elements(parent);
      }
      state = redcore::update_ddmin(std::move(state), survivors, {ok, oracle::VerdictSource::Oracle});
    }
    return accepted;
  }

 private:
  redcore::CandidateList elements(NodeId parent) const {
    const Node* p = tree_.find(parent);
    if (!p) return {};
    std::vector<const Node*> kids;
    for (const auto& c : p->children)
      if (!c.is_token()) kids.push_back(&c);
    std::stable_sort(kids.begin(), kids.end(), [](const Node* a, const Node* b) {
      return a->token_count > b->token_count;
    });
    redcore::CandidateList out;
    for (auto* k : kids) out.push_back(k->id);
    return out;
  }

  SyntaxTree& tree_;
  std::size_t& tokens_;
  oracle::Oracle& oracle_;
  redcore::StageReport& report_;
};

}  // namespace

std::vector<DeletionSite> enumerate_sites(const SyntaxTree& tree) {
  std::vector<DeletionSite> out;
  collect(tree.root(), out);
  return out;
}

SyntacticResult reduce_syntactic(SyntaxTree tree, oracle::Oracle& oracle) {
  auto start = Clock::now();
  std::size_t queries_before = oracle.queries();
  SyntacticResult result;
  auto& report = result.report;
  report.stage = "syn";
  std::size_t tokens = frontend::count_tokens(tree);
  report.tokens_before = tokens;
  if (!oracle.query(frontend::print(tree)).accept)
    throw InitialPropertyError("the input does not satisfy the property");

  Pass pass(tree, tokens, oracle, report);
  while (true) {
    ++result.passes;
    // A unit is either a whole sibling list or one optional subtree.
    struct Unit {
      NodeId node;
      bool list;
      std::size_t size;
      std::size_t position;
    };
    std::map<NodeId, Unit> lists;
    std::vector<Unit> units;
    for (const auto& s : enumerate_sites(tree)) {
      if (s.kind == SiteKind::ListElement) {
        auto [it, fresh] = lists.try_emplace(s.parent, Unit{s.parent, true, 0, units.size()});
        if (fresh) units.push_back(it->second);
        it->second.size += s.token_count;
      } else {
        units.push_back({s.node, false, s.token_count, units.size()});
      }
    }
    for (auto& u : units)
      if (u.list) u.size = lists.at(u.node).size;
    std::stable_sort(units.begin(), units.end(),
                     [](const Unit& a, const Unit& b) { return a.size > b.size; });

    std::size_t accepted = 0;
    for (const auto& u : units) {
      if (!tree.contains(u.node)) continue;
      if (u.list)
        accepted += pass.reduce_list(u.node);
      else
        accepted += pass.try_delete({u.node});
    }
    if (accepted == 0) break;
  }

  report.tokens_after = tokens;
  report.queries = oracle.queries() - queries_before;
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  result.tree = std::move(tree);
  return result;
}

std::vector<redcore::Violation> syntactic_minimality_sweep(const SyntaxTree& tree,
                                                           oracle::Oracle& oracle) {
  std::vector<redcore::Violation> out;
  std::size_t tokens = frontend::count_tokens(tree);
  for (const auto& s : enumerate_sites(tree)) {
    std::optional<SyntaxTree> next;
    try {
      next = frontend::remove_nodes(tree, {s.node});
    } catch (const EditError&) {
      continue;
    }
    std::size_t after = frontend::count_tokens(*next);
    if (after >= tokens) continue;
    if (oracle.query(frontend::print(*next)).accept) out.push_back({"syn", {s.node}, after});
  }
  return out;
}

}  // namespace drr::synred
