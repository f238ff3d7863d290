#include "semlex/lfgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace semlex {

std::string indicator_name(Indicator ind) {
  switch (ind) {
    case Indicator::F: return "F";
    case Indicator::Impro: return "IMPRO";
    case Indicator::Term: return "TERM";
    case Indicator::Operator: return "OP";
  }
  return {};
}

std::string mark_name(SurfaceMark m) {
  switch (m) {
    case SurfaceMark::Parenthetical: return "PARENTHETICAL";
    case SurfaceMark::IndefPronoun: return "INDEF-PRONOUN";
    case SurfaceMark::IndefNoun: return "INDEF-NOUN";
    case SurfaceMark::CertainMarked: return "CERTAIN-MARKED";
  }
  return {};
}

const LFNode& LFGraph::node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw DomainError("unknown LF node: " + id);
}

LFNode& LFGraph::node_mut(const std::string& id) {
  for (auto& n : nodes)
    if (n.id == id) return n;
  throw DomainError("unknown LF node: " + id);
}

bool LFGraph::has_node(const std::string& id) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const LFNode& n) { return n.id == id; });
}

std::vector<const LFEdge*> LFGraph::edges_from(const std::string& id) const {
  std::vector<const LFEdge*> out;
  for (const auto& e : edges)
    if (e.from == id) out.push_back(&e);
  return out;
}

std::vector<const LFEdge*> LFGraph::edges_to(const std::string& id) const {
  std::vector<const LFEdge*> out;
  for (const auto& e : edges)
    if (e.to == id) out.push_back(&e);
  return out;
}

std::vector<std::string> LFGraph::path_from_root(const std::string& id) const {
  // Parent pointers; graphs are small.
  std::map<std::string, const LFEdge*> incoming;
  for (const auto& e : edges) incoming.emplace(e.to, &e);
  std::vector<std::string> labels;
  std::string cur = id;
  while (cur != root) {
    auto it = incoming.find(cur);
    if (it == incoming.end()) return {};
    if (it->second->label != "OPERAND") labels.push_back(it->second->label);
    cur = it->second->from;
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

std::vector<const LFNode*> LFGraph::impro_nodes() const {
  std::vector<const LFNode*> out;
  for (const auto& n : nodes)
    if (n.indicator == Indicator::Impro) out.push_back(&n);
  return out;
}

void LFGraph::check(const TypeId& referential_type) const {
  std::set<std::string> ids;
  for (const auto& n : nodes)
    if (!ids.insert(n.id).second)
      throw DomainError("duplicate LF node id: " + n.id);
  if (!ids.count(root)) throw DomainError("LF root missing: " + root);
  for (const auto& e : edges) {
    if (!ids.count(e.from) || !ids.count(e.to))
      throw DomainError("LF edge endpoint missing: " + e.from + "->" + e.to);
    if (e.from == e.to) throw DomainError("LF self loop at " + e.from);
  }
  for (const auto& n : nodes) {
    if (n.indicator != Indicator::Impro) continue;
    if (n.type != referential_type)
      throw DomainError("gap node " + n.id + " must have type " +
                        referential_type.value);
    if (!n.word.empty())
      throw DomainError("gap node " + n.id + " carries a word");
    if (edges_to(n.id).size() != 1)
      throw DomainError("gap node " + n.id + " must have exactly one incoming edge");
  }
  // Connectivity from the root and role-edge acyclicity.
  std::set<std::string> reached;
  std::function<void(const std::string&, std::set<std::string>&)> dfs =
      [&](const std::string& id, std::set<std::string>& stack) {
        if (stack.count(id)) throw DomainError("cycle on role edges at " + id);
        if (!reached.insert(id).second) return;
        stack.insert(id);
        for (const auto* e : edges_from(id)) dfs(e->to, stack);
        stack.erase(id);
      };
  std::set<std::string> stack;
  dfs(root, stack);
  if (reached.size() != ids.size())
    throw DomainError("LF graph is not connected from the root");
}

static void dump_rec(const LFGraph& g, const std::string& id, int depth,
                     std::ostringstream& os, std::set<std::string>& done) {
  const LFNode& n = g.node(id);
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  os << '(' << indicator_name(n.indicator) << ' ' << n.id;
  if (n.indicator == Indicator::Operator)
    os << ' ' << n.op;
  else
    os << ' ' << n.type.value;
  if (!n.word.empty()) os << " :WORD " << n.word;
  if (!n.marks.empty()) {
    os << " :MARKS (";
    bool first = true;
    for (const auto& m : n.marks) {
      if (!first) os << ' ';
      os << mark_name(m);
      first = false;
    }
    os << ')';
  }
  for (const auto* e : g.edges_from(id)) os << " :" << e->label << ' ' << e->to;
  os << ")\n";
  if (!done.insert(id).second) return;
  for (const auto* e : g.edges_from(id)) dump_rec(g, e->to, depth + 1, os, done);
}

std::string LFGraph::dump() const {
  std::ostringstream os;
  std::set<std::string> done;
  dump_rec(*this, root, 0, os, done);
  return os.str();
}

LFGraph subgraph(const LFGraph& g, const std::string& new_root) {
  LFGraph out;
  out.root = new_root;
  out.tag_matches = g.tag_matches;
  out.context_matches = g.context_matches;
  out.sense_penalty = g.sense_penalty;
  out.sense_depth = g.sense_depth;
  std::set<std::string> keep;
  std::function<void(const std::string&)> dfs = [&](const std::string& id) {
    if (!keep.insert(id).second) return;
    for (const auto* e : g.edges_from(id)) dfs(e->to);
  };
  dfs(new_root);
  for (const auto& n : g.nodes)
    if (keep.count(n.id)) out.nodes.push_back(n);
  for (const auto& e : g.edges)
    if (keep.count(e.from) && keep.count(e.to)) out.edges.push_back(e);
  for (const auto& n : out.nodes)
    if (n.indicator == Indicator::Impro) ++out.impro_count;
  return out;
}

}  // namespace semlex
