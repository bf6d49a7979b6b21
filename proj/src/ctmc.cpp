#include "rumorlab/ctmc.hpp"

#include "rumorlab/errors.hpp"
#include "rumorlab/parallel.hpp"
#include "rumorlab/rng.hpp"

#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace rumorlab {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::absorbed:
      return "absorbed";
    case StopReason::level_reached:
      return "level_reached";
    case StopReason::event_cap:
      return "event_cap";
  }
  return "unknown";
}

const char* to_string(LevelMeasure measure) {
  return measure == LevelMeasure::graph_distance ? "graph_distance" : "hub_generation";
}

LevelMeasure default_level_measure(const TreeTopology& topology) {
  return topology.kind == TreeKind::cayley ? LevelMeasure::graph_distance : LevelMeasure::hub_generation;
}

int default_target_level(const TreeTopology& topology) {
  return topology.kind == TreeKind::cayley ? kDefaultCayleyLevel : kDefaultHubLevel;
}

namespace {

constexpr std::uint64_t kTreeStream = 1;
constexpr std::uint64_t kDynamicsStream = 2;

struct Node {
  std::uint64_t key = 0;
  std::int32_t parent = -1;
  std::int32_t slots = -1;  // first child slot, allocated once the vertex spreads
  std::int32_t children = 0;
  std::int32_t degree = 0;
  std::int32_t depth = 0;
  std::int32_t hub_generation = 0;
  VertexRole role;
  VertexState state = VertexState::ignorant;
};

// Sparse arena over the touched part of an infinite tree. A child slot holds
// -1 until that child is first contacted, so "materialized" means
// "non-ignorant".
class Engine {
 public:
  struct Focal {
    int children = 0;  // the focal root also has one informed neighbour
  };

  SimOutcome run(const TreeTopology& topology, double p, int target_level, std::int64_t event_cap,
                 std::uint64_t seed, LevelMeasure measure, const TransitionObserver& observer) {
    topology_ = &topology;
    reset();
    Stream rng(derive_key(seed, kDynamicsStream));
    const std::uint64_t tree_seed = derive_key(seed, kTreeStream);
    const int root_children = child_count(topology, {RoleKind::hub, 0}, true);
    add_root(root_key(tree_seed), root_children, root_children, rng);

    SimOutcome outcome;
    std::int64_t active = 1;
    while (true) {
      if (queue_.empty()) {
        outcome.stop_reason = StopReason::absorbed;
        break;
      }
      if (outcome.events_processed >= event_cap) {
        outcome.stop_reason = StopReason::event_cap;
        break;
      }
      const auto [time, index] = queue_.top();
      queue_.pop();
      ++outcome.events_processed;
      const int child = pick_child(index, rng);
      if (child < 0 || slot(index, child) >= 0) {
        nodes_[index].state = VertexState::stifler;
        --active;
        if (observer) {
          observer({index, nodes_[index].parent, -1, VertexState::spreader, VertexState::stifler, time});
        }
        continue;
      }
      const std::int32_t born = materialize(index, child, rng.uniform() < p);
      ++outcome.informed_total;
      const Node& fresh = nodes_[born];
      if (observer) {
        observer({born, index, index, VertexState::ignorant, fresh.state, time});
      }
      if (fresh.state == VertexState::spreader) {
        ++active;
        const int level = measure == LevelMeasure::graph_distance ? fresh.depth : fresh.hub_generation;
        if (level > outcome.reached_level) outcome.reached_level = level;
        schedule(born, time, rng);
        if (level >= target_level) {
          outcome.stop_reason = StopReason::level_reached;
          break;
        }
      }
      schedule(index, time, rng);
    }
    outcome.active_spreaders_at_stop = active;
    return outcome;
  }

  // A single spreader with one informed neighbour and `children` ignorant
  // ones, run until it stifles. Informed children never act: nothing they do
  // can change the focal vertex's contact sequence on a tree.
  struct FocalResult {
    int spreaders = 0;
    bool designated_contacted = false;  // child 0
  };

  FocalResult run_focal(const TreeTopology& topology, int children, double p, Stream& rng) {
    topology_ = &topology;
    reset();
    add_root(0, children, children + 1, rng);
    FocalResult result;
    while (!queue_.empty()) {
      const auto [time, index] = queue_.top();
      queue_.pop();
      // The informed neighbour is drawn as index `children`.
      const auto drawn = static_cast<int>(rng.below(static_cast<std::uint64_t>(nodes_[0].degree)));
      if (drawn == children || slot(0, drawn) >= 0) {
        nodes_[0].state = VertexState::stifler;
        break;
      }
      const std::int32_t born = materialize(0, drawn, rng.uniform() < p);
      if (drawn == 0) result.designated_contacted = true;
      if (nodes_[born].state == VertexState::spreader) ++result.spreaders;
      schedule(index, time, rng);
    }
    return result;
  }

 private:
  void reset() {
    nodes_.clear();
    slots_.clear();
    queue_ = {};
  }

  void add_root(std::uint64_t key, int children, int degree, Stream& rng) {
    Node root;
    root.key = key;
    root.children = children;
    root.degree = degree;
    root.role = {RoleKind::hub, 0};
    root.state = VertexState::spreader;
    nodes_.push_back(root);
    allocate_slots(0);
    schedule(0, 0.0, rng);
  }

  void allocate_slots(std::int32_t index) {
    nodes_[index].slots = static_cast<std::int32_t>(slots_.size());
    slots_.resize(slots_.size() + static_cast<std::size_t>(nodes_[index].children), -1);
  }

  std::int32_t& slot(std::int32_t index, int child) {
    return slots_[static_cast<std::size_t>(nodes_[index].slots + child)];
  }

  // Uniform neighbour: -1 for the parent, else a child index.
  int pick_child(std::int32_t index, Stream& rng) {
    const Node& node = nodes_[index];
    const auto drawn = static_cast<int>(rng.below(static_cast<std::uint64_t>(node.degree)));
    if (node.parent < 0) return drawn;
    return drawn == 0 ? -1 : drawn - 1;
  }

  std::int32_t materialize(std::int32_t parent, int child, bool spreads) {
    const Node& up = nodes_[parent];
    Node node;
    node.key = child_key(up.key, static_cast<std::uint32_t>(child));
    node.role = child_role(*topology_, up.role, static_cast<std::uint32_t>(child), node.key);
    node.parent = parent;
    node.depth = up.depth + 1;
    node.hub_generation = up.hub_generation + (node.role.kind == RoleKind::hub ? 1 : 0);
    node.children = child_count(*topology_, node.role, false);
    node.degree = node.children + 1;
    node.state = spreads ? VertexState::spreader : VertexState::stifler;
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    slot(parent, child) = index;
    if (spreads) allocate_slots(index);
    return index;
  }

  void schedule(std::int32_t index, double now, Stream& rng) {
    queue_.emplace(now + rng.exponential(nodes_[index].degree), index);
  }

  using Event = std::pair<double, std::int32_t>;
  const TreeTopology* topology_ = nullptr;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> slots_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
};

}  // namespace

SimOutcome simulate_mt(const TreeTopology& topology, double p, int target_level, std::int64_t event_cap,
                       std::uint64_t seed, std::optional<LevelMeasure> level,
                       const TransitionObserver& observer) {
  topology.validate();
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (target_level < 1) throw DomainError("target level must be >= 1");
  if (event_cap < 1) throw DomainError("event cap must be >= 1");
  Engine engine;
  return engine.run(topology, p, target_level, event_cap, seed,
                    level.value_or(default_level_measure(topology)), observer);
}

Pmf offspring_empirical(int d, double p, std::int64_t replicas, std::uint64_t seed, int threads) {
  if (d < 2) throw DomainError("d must be >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (replicas < 1) throw DomainError("replicas must be >= 1");
  const TreeTopology topology = TreeTopology::cayley(d);
  struct State {
    Engine engine;
    std::vector<std::int64_t> counts;
  };
  State initial{Engine{}, std::vector<std::int64_t>(static_cast<std::size_t>(d) + 1, 0)};
  const State total = parallel_replicas(
      replicas, threads, initial,
      [&](State& state, std::int64_t r) {
        Stream rng(derive_key(seed, static_cast<std::uint64_t>(r)));
        const auto result = state.engine.run_focal(topology, d, p, rng);
        ++state.counts[static_cast<std::size_t>(result.spreaders)];
      },
      [](State& into, const State& from) {
        for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += from.counts[i];
      });
  std::vector<double> probs;
  probs.reserve(total.counts.size());
  for (auto c : total.counts) probs.push_back(static_cast<double>(c) / static_cast<double>(replicas));
  return Pmf::floating(0, std::move(probs));
}

EstimateCI path_traversal_empirical(int k, std::int64_t replicas, std::uint64_t seed, int threads) {
  if (k < 2) throw DomainError("k must be >= 2");
  if (replicas < 1) throw DomainError("replicas must be >= 1");
  const TreeTopology topology = TreeTopology::cayley(2);
  struct State {
    Engine engine;
    std::int64_t hits = 0;
  };
  const State total = parallel_replicas(
      replicas, threads, State{},
      [&](State& state, std::int64_t r) {
        Stream rng(derive_key(seed, static_cast<std::uint64_t>(r)));
        if (state.engine.run_focal(topology, k - 1, 1.0, rng).designated_contacted) ++state.hits;
      },
      [](State& into, const State& from) { into.hits += from.hits; });
  return wilson_interval(total.hits, replicas, seed);
}

SurvivalEstimate estimate_survival_ctmc(const TreeTopology& topology, double p, int target_level,
                                        std::int64_t replicas, std::int64_t event_cap,
                                        std::uint64_t seed, std::optional<LevelMeasure> level,
                                        int threads) {
  topology.validate_for_survival();
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("p must lie in (0, 1]");
  if (target_level < 1) throw DomainError("target level must be >= 1");
  if (replicas < 1) throw DomainError("replicas must be >= 1");
  if (event_cap < 1) throw DomainError("event cap must be >= 1");
  const LevelMeasure measure = level.value_or(default_level_measure(topology));
  struct State {
    Engine engine;
    std::int64_t reached = 0;
    std::int64_t cap_hits = 0;
  };
  const State total = parallel_replicas(
      replicas, threads, State{},
      [&](State& state, std::int64_t r) {
        const auto outcome = state.engine.run(topology, p, target_level, event_cap,
                                              derive_key(seed, static_cast<std::uint64_t>(r)), measure,
                                              nullptr);
        if (outcome.stop_reason == StopReason::absorbed) return;
        ++state.reached;
        if (outcome.stop_reason == StopReason::event_cap) ++state.cap_hits;
      },
      [](State& into, const State& from) {
        into.reached += from.reached;
        into.cap_hits += from.cap_hits;
      });
  return {wilson_interval(total.reached, replicas, seed), total.cap_hits};
}

}  // namespace rumorlab
