#pragma once

// Lazily realized trees. A vertex is addressed by its path of child indices
// from the root; every random choice about a vertex is a pure function of
// (master seed, path), so the infinite tree never has to be stored.
//
// hub_path(d, k, alpha, h): the root is a hub with d+1 neighbours, other hubs
// have d neighbours away from the root. Each hub neighbour is, with
// probability alpha, the start of a path of h edges ending at a new hub, and
// otherwise a leaf. Path vertices have degree k: the two path edges plus k-2
// leaves. With alpha = 1 and h = 1 this is the Cayley tree T_d.

#include <cstdint>
#include <string>
#include <vector>

namespace rumorlab {

enum class TreeKind { cayley, hub_path };

struct TreeTopology {
  TreeKind kind = TreeKind::cayley;
  int d = 2;
  int k = 2;
  double alpha = 1.0;
  int h = 1;

  static TreeTopology cayley(int d);
  static TreeTopology hub_path(int d, int k, double alpha, int h);

  void validate() const;
  /// Throws when alpha <= 1/(d+1), where the hub tree itself is finite a.s.
  void validate_for_survival() const;
  std::vector<std::string> warnings() const;
  std::string describe() const;
};

enum class RoleKind : std::uint8_t { hub, path_regular, leaf };

struct VertexRole {
  RoleKind kind = RoleKind::hub;
  int position = 0;  // 1..h-1 along a path, for path_regular only

  bool operator==(const VertexRole&) const = default;
};

struct VertexId {
  std::vector<std::uint32_t> path;  // empty = root

  int depth() const { return static_cast<int>(path.size()); }
  VertexId child(std::uint32_t index) const;
  bool operator==(const VertexId&) const = default;
  std::string to_string() const;
};

struct ChildVertex {
  VertexId id;
  VertexRole role;
};

/// Children of a vertex in the realized tree (the parent is not listed).
/// Throws DomainError when the path is not a vertex of the realized tree.
std::vector<ChildVertex> children(const TreeTopology& topology, const VertexId& vertex,
                                  std::uint64_t master_seed);

/// Role of a vertex, found by walking down from the root.
VertexRole role_of(const TreeTopology& topology, const VertexId& vertex, std::uint64_t master_seed);

// Incremental interface used by the simulator: it carries each materialized
// vertex's key and role instead of re-walking paths.

std::uint64_t root_key(std::uint64_t master_seed);
std::uint64_t child_key(std::uint64_t parent_key, std::uint32_t child_index);
/// Number of children (neighbours away from the root).
int child_count(const TreeTopology& topology, const VertexRole& role, bool is_root);
/// Role of child `index` of a vertex with role `parent`, whose own key is
/// `key` (that is, child_key(parent key, index)).
VertexRole child_role(const TreeTopology& topology, const VertexRole& parent, std::uint32_t index,
                      std::uint64_t key);

}  // namespace rumorlab
