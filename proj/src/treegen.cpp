#include "rumorlab/treegen.hpp"

#include "rumorlab/errors.hpp"
#include "rumorlab/rng.hpp"

#include <sstream>

namespace rumorlab {

namespace {
constexpr std::uint64_t kRoleSalt = 0x526f6c6553616c74ULL;
}

TreeTopology TreeTopology::cayley(int d) {
  TreeTopology t;
  t.kind = TreeKind::cayley;
  t.d = d;
  t.validate();
  return t;
}

TreeTopology TreeTopology::hub_path(int d, int k, double alpha, int h) {
  TreeTopology t;
  t.kind = TreeKind::hub_path;
  t.d = d;
  t.k = k;
  t.alpha = alpha;
  t.h = h;
  t.validate();
  return t;
}

void TreeTopology::validate() const {
  if (d < 2) throw DomainError("tree: d must be >= 2");
  if (kind == TreeKind::cayley) return;
  if (k < 2) throw DomainError("hub tree: k must be >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hub tree: alpha must lie in (0, 1]");
  if (h < 1) throw DomainError("hub tree: h must be >= 1");
}

void TreeTopology::validate_for_survival() const {
  validate();
  if (kind == TreeKind::hub_path && !(alpha > 1.0 / (d + 1.0))) {
    throw DomainError("hub tree: survival experiments need alpha > 1/(d+1)");
  }
}

std::vector<std::string> TreeTopology::warnings() const {
  std::vector<std::string> out;
  if (kind == TreeKind::hub_path && k >= d) out.emplace_back("k >= d: hub-tree threshold assumes k < d");
  return out;
}

std::string TreeTopology::describe() const {
  std::ostringstream os;
  if (kind == TreeKind::cayley) {
    os << "cayley(d=" << d << ")";
  } else {
    os << "hub_path(d=" << d << ", k=" << k << ", alpha=" << alpha << ", h=" << h << ")";
  }
  return os.str();
}

VertexId VertexId::child(std::uint32_t index) const {
  VertexId out{path};
  out.path.push_back(index);
  return out;
}

std::string VertexId::to_string() const {
  std::string out = "0";
  for (auto i : path) out += "." + std::to_string(i);
  return out;
}

std::uint64_t root_key(std::uint64_t master_seed) { return mix64(master_seed ^ 0x726f6f74ULL); }

std::uint64_t child_key(std::uint64_t parent_key, std::uint32_t child_index) {
  return derive_key(parent_key, child_index);
}

int child_count(const TreeTopology& topology, const VertexRole& role, bool is_root) {
  switch (role.kind) {
    case RoleKind::hub:
      return is_root ? topology.d + 1 : topology.d;
    case RoleKind::path_regular:
      return topology.k - 1;
    case RoleKind::leaf:
      return 0;
  }
  return 0;
}

VertexRole child_role(const TreeTopology& topology, const VertexRole& parent, std::uint32_t index,
                      std::uint64_t key) {
  if (topology.kind == TreeKind::cayley) return {RoleKind::hub, 0};
  switch (parent.kind) {
    case RoleKind::hub: {
      const bool path_start = keyed_uniform(key ^ kRoleSalt) < topology.alpha;
      if (!path_start) return {RoleKind::leaf, 0};
      if (topology.h == 1) return {RoleKind::hub, 0};
      return {RoleKind::path_regular, 1};
    }
    case RoleKind::path_regular:
      // Child 0 continues the path; the other k-2 children are leaves.
      if (index != 0) return {RoleKind::leaf, 0};
      if (parent.position + 1 >= topology.h) return {RoleKind::hub, 0};
      return {RoleKind::path_regular, parent.position + 1};
    case RoleKind::leaf:
      break;
  }
  throw DomainError("leaves have no children");
}

VertexRole role_of(const TreeTopology& topology, const VertexId& vertex, std::uint64_t master_seed) {
  topology.validate();
  VertexRole role{RoleKind::hub, 0};
  std::uint64_t key = root_key(master_seed);
  bool is_root = true;
  for (std::uint32_t index : vertex.path) {
    if (index >= static_cast<std::uint32_t>(child_count(topology, role, is_root))) {
      throw DomainError("vertex " + vertex.to_string() + " is not in the realized tree");
    }
    key = child_key(key, index);
    role = child_role(topology, role, index, key);
    is_root = false;
  }
  return role;
}

std::vector<ChildVertex> children(const TreeTopology& topology, const VertexId& vertex,
                                  std::uint64_t master_seed) {
  const VertexRole role = role_of(topology, vertex, master_seed);
  std::uint64_t key = root_key(master_seed);
  for (std::uint32_t index : vertex.path) key = child_key(key, index);
  const int count = child_count(topology, role, vertex.path.empty());
  std::vector<ChildVertex> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto index = static_cast<std::uint32_t>(i);
    out.push_back({vertex.child(index), child_role(topology, role, index, child_key(key, index))});
  }
  return out;
}

}  // namespace rumorlab
