#include "edge/edcn.hpp"

#include <algorithm>
#include <numeric>

namespace edge {

int edcn_lower_bound(const Graph& graph) {
  int k = 1;
  while (k * (k + 1) / 2 < graph.edge_count()) ++k;
  return k;
}

namespace {

class EdcnSearch {
 public:
  EdcnSearch(const Graph& g, int k) : g_(g), k_(k), colors_(g.vertex_count(), kUncolored) {
    order_.resize(g.vertex_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
  }

  std::optional<PartialColoring> run() {
    if (extend(0, 0)) return PartialColoring(colors_);
    return std::nullopt;
  }

 private:
  bool extend(std::size_t depth, int max_used) {
    if (depth == order_.size()) return true;
    const int v = order_[depth];
    const int limit = std::min(k_, max_used + 1);
    std::vector<int> created;
    for (int c = 1; c <= limit; ++c) {
      created.clear();
      bool ok = true;
      auto add = [&](EdgeColor ec) {
        int idx = ec.index();
        if (used_.test(idx)) return false;
        used_.set(idx);
        created.push_back(idx);
        return true;
      };
      for (int u : g_.neighbors(v)) {
        if (colors_[u] != kUncolored && !add(EdgeColor(c, colors_[u]))) {
          ok = false;
          break;
        }
      }
      if (ok && g_.has_loop(v)) ok = add(EdgeColor(c, c));
      if (ok) {
        colors_[v] = c;
        if (extend(depth + 1, std::max(max_used, c))) return true;
        colors_[v] = kUncolored;
      }
      for (int idx : created) used_.reset(idx);
    }
    return false;
  }

  const Graph& g_;
  int k_;
  std::vector<int> colors_;
  std::vector<int> order_;
  PairSet used_;
};

}  // namespace

std::optional<PartialColoring> find_edge_distinguishing_coloring(const Graph& graph, int k) {
  if (k < 1 || k > kMaxColors) return std::nullopt;
  return EdcnSearch(graph, k).run();
}

EdcnResult edcn(const Graph& graph) {
  // All-distinct colors always work, so the search terminates by k = n.
  const int cap = std::max(1, graph.vertex_count());
  for (int k = edcn_lower_bound(graph); k <= cap; ++k) {
    if (auto witness = find_edge_distinguishing_coloring(graph, k)) {
      return {k, std::move(*witness)};
    }
  }
  std::vector<int> distinct(graph.vertex_count());
  std::iota(distinct.begin(), distinct.end(), 1);
  return {cap, PartialColoring(std::move(distinct))};
}

}  // namespace edge
