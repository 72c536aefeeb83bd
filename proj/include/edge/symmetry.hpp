#pragma once

#include <cstddef>
#include <vector>

#include "edge/graph.hpp"

namespace edge {

/// Bijection on {0..n-1}; `image(v)` is where v is sent.
class VertexPermutation {
 public:
  VertexPermutation() = default;
  /// Throws ParameterError unless `images` is a bijection.
  explicit VertexPermutation(std::vector<int> images);
  static VertexPermutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int image(int v) const { return images_[v]; }
  const std::vector<int>& images() const { return images_; }

  VertexPermutation inverse() const;
  /// (this * other)(v) = this(other(v)).
  VertexPermutation compose(const VertexPermutation& other) const;
  bool is_identity() const;

  /// True when {u,v} in E iff {image(u), image(v)} in E, loops included.
  bool is_automorphism_of(const Graph& g) const;

  auto operator<=>(const VertexPermutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Brute-force routines refuse graphs above this many vertices.
inline constexpr int kMaxSymmetryVertices = 12;

/// Pruned backtracking. Throws SizeLimitError when n > kMaxSymmetryVertices.
bool are_isomorphic(const Graph& g, const Graph& h);

/// The full automorphism group, identity first, remaining elements in
/// lexicographic order of their image vectors. Throws SizeLimitError when
/// n > kMaxSymmetryVertices or the group exceeds `max_group_size`.
std::vector<VertexPermutation> automorphisms(const Graph& g,
                                             std::size_t max_group_size = 1'000'000);

/// `g` with vertex v renamed to perm.image(v). Layout is dropped.
Graph relabel(const Graph& g, const VertexPermutation& perm);

}  // namespace edge
