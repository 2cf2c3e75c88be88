#include "fusion/depgraph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fusion {

void DepGraph::add_vertex(const std::string& v) {
  vertices.insert(v);
  succs.try_emplace(v);
  preds.try_emplace(v);
}

void DepGraph::add_edge(const std::string& from, const std::string& to) {
  add_vertex(from);
  add_vertex(to);
  succs[from].insert(to);
  preds[to].insert(from);
}

bool DepGraph::has_edge(const std::string& from, const std::string& to) const {
  auto it = succs.find(from);
  return it != succs.end() && it->second.count(to) > 0;
}

DepGraph DepGraph::without(const std::set<std::string>& removed) const {
  DepGraph g;
  for (const auto& v : vertices)
    if (!removed.count(v)) g.add_vertex(v);
  for (const auto& [from, tos] : succs) {
    if (removed.count(from)) continue;
    for (const auto& to : tos)
      if (!removed.count(to)) g.add_edge(from, to);
  }
  return g;
}

DepGraph deps(const std::vector<FlatClause>& clauses) {
  DepGraph g;
  for (const auto& cl : clauses) {
    std::set<std::string> hs = clause_hyp_kvars(cl);
    std::set<std::string> gs = clause_goal_kvars(cl);
    for (const auto& h : hs) g.add_vertex(h);
    for (const auto& k : gs) g.add_vertex(k);
    for (const auto& h : hs)
      for (const auto& k : gs) g.add_edge(h, k);
  }
  return g;
}

DepGraph deps(const ConstraintPtr& c) { return deps(flatten(c)); }

namespace {
struct TarjanState {
  const DepGraph& g;
  std::map<std::string, int> index, low;
  std::map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  int next = 0;
  std::vector<std::vector<std::string>> comps;

  explicit TarjanState(const DepGraph& gr) : g(gr) {}

  void strongconnect(const std::string& v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    auto it = g.succs.find(v);
    if (it != g.succs.end()) {
      for (const auto& w : it->second) {
        if (!index.count(w)) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  }
};
}  // namespace

std::vector<std::vector<std::string>> sccs(const DepGraph& g) {
  TarjanState st(g);
  for (const auto& v : g.vertices)
    if (!st.index.count(v)) st.strongconnect(v);
  std::sort(st.comps.begin(), st.comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return st.comps;
}

bool is_acyclic(const DepGraph& g) {
  for (const auto& comp : sccs(g)) {
    if (comp.size() > 1) return false;
    if (g.has_edge(comp.front(), comp.front())) return false;  // self-loop
  }
  return true;
}

std::set<std::string> cut_vars(const DepGraph& g) {
  std::set<std::string> cuts;
  DepGraph cur = g;
  while (true) {
    bool removed_any = false;
    for (const auto& comp : sccs(cur)) {
      bool cyclic = comp.size() > 1 || cur.has_edge(comp.front(), comp.front());
      if (!cyclic) continue;
      std::set<std::string> members(comp.begin(), comp.end());
      std::string best;
      long best_score = -1;
      for (const auto& v : comp) {  // comp is name-sorted: first max wins ties
        long ins = 0, outs = 0;
        for (const auto& p : cur.preds.at(v))
          if (members.count(p)) ++ins;
        for (const auto& s : cur.succs.at(v))
          if (members.count(s)) ++outs;
        long score = ins * outs;
        if (score > best_score) {
          best_score = score;
          best = v;
        }
      }
      cuts.insert(best);
      cur = cur.without({best});
      removed_any = true;
      break;  // recompute SCCs after each removal
    }
    if (!removed_any) break;
  }
  return cuts;
}

std::vector<std::string> topo_order(const DepGraph& g) {
  std::map<std::string, size_t> incoming;
  for (const auto& v : g.vertices) incoming[v] = g.preds.at(v).size();
  // min-heap on name
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [v, n] : incoming)
    if (n == 0) ready.push(v);
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& w : g.succs.at(v))
      if (--incoming[w] == 0) ready.push(w);
  }
  if (order.size() != g.vertices.size()) throw std::logic_error("topo_order: graph is cyclic");
  return order;
}

}  // namespace fusion
