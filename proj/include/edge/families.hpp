#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edge/graph.hpp"

namespace edge {

namespace family {
struct Path { int n; };
struct Cycle { int n; };
struct Complete { int n; };
/// Complete graph with a loop on every vertex (K*_n).
struct CompleteLooped { int n; };
struct CompleteBipartite { int n; int m; };
/// C_{n-1} joined with a hub; the hub is the last vertex.
struct Wheel { int n; };
/// K_2 joined with n-2 independent vertices; the spine is {v1, v2}.
struct Book { int n; };
/// C_n plus the chord v1 -- vj.
struct ChordedCycle { int n; int j; };
/// Edges exactly between indices differing by 1 or 2.
struct TriangularLadder { int n; };
/// One of "moser-spindle", "petersen", "cube", "octahedron".
struct Named { std::string name; };
struct Custom { int n; std::vector<Edge> edges; bool loops = false; };
}  // namespace family

using FamilySpec =
    std::variant<family::Path, family::Cycle, family::Complete,
                 family::CompleteLooped, family::CompleteBipartite,
                 family::Wheel, family::Book, family::ChordedCycle,
                 family::TriangularLadder, family::Named, family::Custom>;

/// Builds the board with the fixed per-family vertex numbering (paths left to
/// right, cycles clockwise from v1). Every family graph carries a layout.
/// Throws ParameterError naming the offending parameter.
Graph build(const FamilySpec& spec);

/// Parses the `name:params` syntax, e.g. `path:5`, `chorded:8,3`,
/// `bipartite:2,3`, `moser-spindle`.
FamilySpec parse_family(std::string_view text);

/// Inverse of parse_family for the non-Custom families.
std::string to_string(const FamilySpec& spec);

/// Short mathematical display name, e.g. "P_5", "C^{1,3}_8", "K*_4".
std::string display_name(const FamilySpec& spec);

const std::vector<std::string>& named_graphs();

}  // namespace edge
