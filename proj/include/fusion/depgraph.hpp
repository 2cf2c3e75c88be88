#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fusion/constraint.hpp"

namespace fusion {

// Directed dependency graph over kappa variables: an edge k1 -> k2 records
// that k1 occurs in the hypotheses of a clause whose goal mentions k2 (k1
// feeds the definition of k2). Every kappa in the constraint appears as a
// vertex, isolated or not.
struct DepGraph {
  std::set<std::string> vertices;
  std::map<std::string, std::set<std::string>> succs;  // k -> vertices it feeds
  std::map<std::string, std::set<std::string>> preds;  // k -> vertices feeding it

  void add_vertex(const std::string& v);
  void add_edge(const std::string& from, const std::string& to);
  bool has_edge(const std::string& from, const std::string& to) const;
  DepGraph without(const std::set<std::string>& removed) const;
};

DepGraph deps(const ConstraintPtr& c);
DepGraph deps(const std::vector<FlatClause>& clauses);

// True iff the graph has no directed cycle (a self-loop is a cycle).
bool is_acyclic(const DepGraph& g);

// Strongly connected components (Tarjan), each sorted by name; the list is
// ordered by smallest member for determinism.
std::vector<std::vector<std::string>> sccs(const DepGraph& g);

// Greedy feedback vertex set: repeatedly pick, within some cyclic strongly
// connected component, the vertex maximizing in-degree * out-degree counted
// inside that component (ties broken by smallest name), remove it, and repeat
// until the graph is acyclic. Deterministic.
std::set<std::string> cut_vars(const DepGraph& g);

// Topological order of an acyclic graph, sources first; among ready vertices
// the smallest name goes first. Throws std::logic_error on a cycle.
std::vector<std::string> topo_order(const DepGraph& g);

}  // namespace fusion
