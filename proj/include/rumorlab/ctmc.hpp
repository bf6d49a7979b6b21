#pragma once

// Event-driven simulation of the Maki-Thompson dynamics with spread
// probability p on a lazily realized tree:
//   0 -> 1  at rate p n1(v),  0 -> 2 at rate (1-p) n1(v),  1 -> 2 at rate n1(v) + n2(v).
//
// Realized through per-spreader contact clocks: a spreader of degree g waits
// an Exponential(g) time and contacts a uniform neighbour. An ignorant
// neighbour becomes a spreader with probability p (a stifler otherwise); a
// non-ignorant neighbour turns the contacting spreader into a stifler.

#include "rumorlab/pmf.hpp"
#include "rumorlab/stats.hpp"
#include "rumorlab/treegen.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace rumorlab {

enum class VertexState : std::uint8_t { ignorant = 0, spreader = 1, stifler = 2 };

/// How far the rumor got: graph distance from the root, or the number of hubs
/// on the way (hub generation). On the Cayley tree the two coincide.
enum class LevelMeasure { graph_distance, hub_generation };

enum class StopReason { absorbed, level_reached, event_cap };

const char* to_string(StopReason reason);
const char* to_string(LevelMeasure measure);

inline constexpr std::int64_t kDefaultEventCap = 100'000'000;
inline constexpr int kDefaultCayleyLevel = 30;
inline constexpr int kDefaultHubLevel = 20;

LevelMeasure default_level_measure(const TreeTopology& topology);
int default_target_level(const TreeTopology& topology);

struct SimOutcome {
  int reached_level = 0;  // deepest level that ever held a spreader
  std::int64_t active_spreaders_at_stop = 0;
  std::int64_t events_processed = 0;
  std::int64_t informed_total = 0;  // vertices other than the root that heard the rumor
  StopReason stop_reason = StopReason::absorbed;

  bool operator==(const SimOutcome&) const = default;
};

/// One state change. Vertices are numbered in order of first contact
/// (root = 0); `informer` is the contacting spreader for 0 -> x changes and
/// -1 otherwise.
struct Transition {
  std::int64_t vertex = 0;
  std::int64_t parent = -1;
  std::int64_t informer = -1;
  VertexState from = VertexState::ignorant;
  VertexState to = VertexState::ignorant;
  double time = 0.0;
};

using TransitionObserver = std::function<void(const Transition&)>;

/// One realization from the root spreader. The tree and the dynamics draw
/// from separate substreams of `seed`.
SimOutcome simulate_mt(const TreeTopology& topology, double p, int target_level,
                       std::int64_t event_cap, std::uint64_t seed,
                       std::optional<LevelMeasure> level = std::nullopt,
                       const TransitionObserver& observer = nullptr);

/// Empirical law of the number of spreaders created by a spreader with one
/// informed neighbour and d ignorant ones.
Pmf offspring_empirical(int d, double p, std::int64_t replicas, std::uint64_t seed, int threads = 0);

/// Empirical probability that a freshly informed degree-k vertex (one informed
/// neighbour, k-1 ignorant) contacts one designated ignorant neighbour before
/// it stops spreading.
EstimateCI path_traversal_empirical(int k, std::int64_t replicas, std::uint64_t seed, int threads = 0);

struct SurvivalEstimate {
  EstimateCI ci;
  std::int64_t cap_hits = 0;  // counted as reaching the level
};

/// Probability that a spreader appears at `target_level`, over independent
/// tree realizations and dynamics (replica r uses derive_key(seed, r)).
SurvivalEstimate estimate_survival_ctmc(const TreeTopology& topology, double p, int target_level,
                                        std::int64_t replicas,
                                        std::int64_t event_cap = kDefaultEventCap,
                                        std::uint64_t seed = 0,
                                        std::optional<LevelMeasure> level = std::nullopt,
                                        int threads = 0);

}  // namespace rumorlab
