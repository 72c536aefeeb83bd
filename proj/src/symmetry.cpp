#include "edge/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "edge/error.hpp"

namespace edge {

VertexPermutation::VertexPermutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw ParameterError("perm", "not a bijection on 0..n-1");
    }
    seen[v] = 1;
  }
}

VertexPermutation VertexPermutation::identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  return VertexPermutation(std::move(images));
}

VertexPermutation VertexPermutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int v = 0; v < size(); ++v) inv[images_[v]] = v;
  return VertexPermutation(std::move(inv));
}

VertexPermutation VertexPermutation::compose(const VertexPermutation& other) const {
  std::vector<int> out(images_.size());
  for (int v = 0; v < size(); ++v) out[v] = images_[other.images_[v]];
  return VertexPermutation(std::move(out));
}

bool VertexPermutation::is_identity() const {
  for (int v = 0; v < size(); ++v) {
    if (images_[v] != v) return false;
  }
  return true;
}

bool VertexPermutation::is_automorphism_of(const Graph& g) const {
  if (size() != g.vertex_count()) return false;
  for (const Edge& e : g.edges()) {
    if (!g.adjacent(images_[e.u], images_[e.v])) return false;
  }
  return true;  // a bijection mapping E into E maps E onto E
}

namespace {

void check_size(const Graph& g) {
  if (g.vertex_count() > kMaxSymmetryVertices) {
    throw SizeLimitError("symmetry search supports at most " +
                         std::to_string(kMaxSymmetryVertices) + " vertices, got " +
                         std::to_string(g.vertex_count()));
  }
}

// Enumerates bijections g -> h that preserve adjacency, mapping g's vertices in
// index order and trying images ascending. `visit` returns false to stop.
void search_isomorphisms(const Graph& g, const Graph& h,
                         const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = g.vertex_count();
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  bool stop = false;

  std::function<void(int)> extend = [&](int v) {
    if (stop) return;
    if (v == n) {
      if (!visit(map)) stop = true;
      return;
    }
    for (int w = 0; w < n && !stop; ++w) {
      if (used[w] || g.degree(v) != h.degree(w) || g.has_loop(v) != h.has_loop(w)) continue;
      bool consistent = true;
      for (int u = 0; u < v && consistent; ++u) {
        consistent = g.adjacent(u, v) == h.adjacent(map[u], w);
      }
      if (!consistent) continue;
      map[v] = w;
      used[w] = 1;
      extend(v + 1);
      used[w] = 0;
      map[v] = -1;
    }
  };
  extend(0);
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> seq;
  for (int v = 0; v < g.vertex_count(); ++v) seq.push_back(g.degree(v) * 2 + g.has_loop(v));
  std::sort(seq.begin(), seq.end());
  return seq;
}

}  // namespace

bool are_isomorphic(const Graph& g, const Graph& h) {
  check_size(g);
  check_size(h);
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) {
    return false;
  }
  if (degree_sequence(g) != degree_sequence(h)) return false;
  bool found = false;
  search_isomorphisms(g, h, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<VertexPermutation> automorphisms(const Graph& g, std::size_t max_group_size) {
  check_size(g);
  std::vector<VertexPermutation> group;
  search_isomorphisms(g, g, [&](const std::vector<int>& map) {
    if (group.size() >= max_group_size) {
      throw SizeLimitError("automorphism group exceeds " + std::to_string(max_group_size) +
                           " elements");
    }
    group.emplace_back(map);
    return true;
  });
  return group;
}

Graph relabel(const Graph& g, const VertexPermutation& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(perm.image(e.u), perm.image(e.v));
  return Graph(g.vertex_count(), edges, g.allows_loops());
}

}  // namespace edge
