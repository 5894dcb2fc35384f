#include "drr/redcore/semantic.hpp"

#include <chrono>

#include "drr/error.hpp"
#include "drr/frontend/printer.hpp"
#include "drr/frontend/sema.hpp"
#include "drr/reconstruct/reconstruct.hpp"

namespace drr::redcore {

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

std::optional<reconstruct::Applied> try_apply(const frontend::SyntaxTree& tree,
                                              const reconstruct::ReconstructionPlan& p,
                                              std::string& why) {
  try {
    return reconstruct::apply(tree, p);
  } catch (const ApplyError& e) {
    why = e.what();
  } catch (const DefaultError& e) {
    why = e.what();
  }
  return std::nullopt;
}

}  // namespace

SemanticResult reduce_semantic(frontend::SyntaxTree tree, semgraph::DependencyGraph graph,
                               oracle::Oracle& oracle, const SemanticOptions& options) {
  auto start = Clock::now();
  std::size_t queries_before = oracle.queries();
  StageReport report;
  report.stage = "sem";
  std::size_t tokens = frontend::count_tokens(tree);
  report.tokens_before = tokens;
  if (!oracle.query(frontend::print(tree)).accept)
    throw InitialPropertyError("the input does not satisfy the property");

  auto state = init_ddmin(semgraph::classify_semantic_nodes(graph));
  bool graph_lost = false;
  while (auto attempt = next_candidate(state)) {
    auto t0 = Clock::now();
    IterationRecord rec;
    rec.stage = "sem";
    rec.iter = report.iterations.size() + 1;
    rec.candidate_ids = *attempt;
    rec.tokens_after = tokens;

    std::set<semgraph::SemanticNodeId> requested(attempt->begin(), attempt->end());
    reconstruct::ReconstructionPlan p;
    std::optional<reconstruct::Applied> applied;
    try {
      p = options.reconstruct ? reconstruct::plan(graph, requested)
                              : reconstruct::plan_without_reconstruction(graph, requested);
      applied = try_apply(tree, p, rec.note);
    } catch (const PlanError& e) {
      rec.note = e.what();
    }

    oracle::Verdict verdict{false, oracle::VerdictSource::PrecheckReject};
    if (applied) {
      rec.tokens_after = frontend::count_tokens(applied->tree);
      rec.compiles = frontend::compiles(applied->tree);
      if (rec.tokens_after >= tokens)
        rec.no_progress = true;
      else
        verdict = oracle.query(frontend::print(applied->tree));
    }

    std::optional<CandidateList> survivors;
    if (verdict.accept) {
      if (options.reconstruct) {
        graph = semgraph::update_graph(graph, p.removed(), applied->placeholders, applied->tree);
      } else {
        try {
          graph = semgraph::build_graph(applied->tree);
        } catch (const GraphError& e) {
          // The oracle accepted a program we cannot analyse; keep it and stop.
          graph_lost = true;
          rec.note = e.what();
        }
      }
      tree = std::move(applied->tree);
      tokens = rec.tokens_after;
      report.accepted.push_back(frontend::print(tree));
      survivors = graph_lost ? CandidateList{} : semgraph::classify_semantic_nodes(graph);
    }
    rec.accept = verdict.accept;
    rec.source = verdict.source;
    rec.elapsed_ms = ms_since(t0);
    report.iterations.push_back(std::move(rec));
    state = update_ddmin(std::move(state), survivors, verdict);
  }

  report.tokens_after = tokens;
  report.queries = oracle.queries() - queries_before;
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {std::move(tree), std::move(graph), std::move(report)};
}

std::vector<Violation> semantic_minimality_sweep(const frontend::SyntaxTree& tree,
                                                 oracle::Oracle& oracle) {
  if (!frontend::compiles(tree)) return {};
  return semantic_minimality_sweep(tree, semgraph::build_graph(tree), oracle);
}

std::vector<Violation> semantic_minimality_sweep(const frontend::SyntaxTree& tree,
                                                 const semgraph::DependencyGraph& graph,
                                                 oracle::Oracle& oracle) {
  std::vector<Violation> out;
  std::size_t tokens = frontend::count_tokens(tree);
  for (auto c : semgraph::classify_semantic_nodes(graph)) {
    std::string why;
    std::optional<reconstruct::Applied> applied;
    try {
      applied = try_apply(tree, reconstruct::plan(graph, {c}), why);
    } catch (const PlanError&) {
      continue;
    }
    if (!applied) continue;
    std::size_t after = frontend::count_tokens(applied->tree);
    if (after >= tokens) continue;
    if (oracle.query(frontend::print(applied->tree)).accept) out.push_back({"sem", {c}, after});
  }
  return out;
}

}  // namespace drr::redcore
