#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semlex/types.hpp"

namespace semlex {

enum class Indicator { F, Impro, Term, Operator };

enum class SurfaceMark { Parenthetical, IndefPronoun, IndefNoun, CertainMarked };

std::string indicator_name(Indicator ind);
std::string mark_name(SurfaceMark m);

struct LFNode {
  std::string id;       // X1, X2, ...
  Indicator indicator = Indicator::Term;
  TypeId type;
  std::string word;     // surface lemma, empty for gaps/operators
  std::string op;       // AND / OR for operator nodes
  std::set<SurfaceMark> marks;
  int token_index = -1;  // surface position, -1 for implicit nodes
};

struct LFEdge {
  std::string from;
  std::string to;
  // Role name (AGENT, FORMAL, ...) or structural label (MOD, OPERAND).
  std::string label;
};

struct LFGraph {
  std::vector<LFNode> nodes;
  std::vector<LFEdge> edges;
  std::string root;
  // Rank components, larger is better for the first two, smaller for the rest.
  int tag_matches = 0;
  int context_matches = 0;
  int impro_count = 0;
  int sense_penalty = 0;
  int sense_depth = 0;

  const LFNode& node(const std::string& id) const;
  LFNode& node_mut(const std::string& id);
  bool has_node(const std::string& id) const;
  std::vector<const LFEdge*> edges_from(const std::string& id) const;
  std::vector<const LFEdge*> edges_to(const std::string& id) const;

  // Role-edge path labels from the root to a node, skipping through OPERAND
  // edges; empty when unreachable.
  std::vector<std::string> path_from_root(const std::string& id) const;

  std::vector<const LFNode*> impro_nodes() const;

  // Structural invariants: unique ids, endpoints exist, no self loops,
  // connected, acyclic role edges, gap typing and single incoming edge.
  void check(const TypeId& referential_type) const;

  // Deterministic indented term dump, one node per line.
  std::string dump() const;
};

// Extracts a rooted subgraph (used when a coordination operand becomes its
// own definition candidate).
LFGraph subgraph(const LFGraph& g, const std::string& new_root);

}  // namespace semlex
