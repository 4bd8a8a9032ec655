#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "orthoshot/dataset.hpp"

namespace orthoshot {

struct EpisodeSpec {
    std::size_t n_way = 5;
    std::size_t k_shot = 1;
    std::size_t q_query = 3;
};

// One few-shot task. Labels are episode-local indices 0..n_way-1; class_map
// recovers the dataset class per local index. Support and query items are
// disjoint dataset images.
struct Episode {
    std::vector<std::pair<Image, std::size_t>> support;
    std::vector<std::pair<Image, std::size_t>> query;
    std::vector<std::size_t> class_map;  // local index -> dataset class index
};

enum class PoolMode { fixed, random };

// Table-1 style pool restrictions. Caps of 0 mean "full". When task_cap is
// finite, episode classes come only from a pre-enumerated combination list.
struct PoolLimits {
    std::size_t support_cap = 0;
    std::size_t query_cap = 0;
    std::size_t task_cap = 0;
    PoolMode mode = PoolMode::fixed;
};

// task_cap distinct class combinations drawn uniformly without replacement.
std::vector<std::vector<std::size_t>> enumerate_task_combinations(const Dataset& ds,
                                                                  std::size_t n_way,
                                                                  std::size_t task_cap,
                                                                  std::mt19937_64& rng);

// Per-run pool state: capped per-class support/query index pools (fixed for
// the whole run, seeded) and the allowed class combinations. Episodes sampled
// from the same pools share the protocol of a single Table-1 row.
struct EpisodePools {
    const Dataset* ds = nullptr;
    EpisodeSpec spec;
    std::vector<std::vector<std::size_t>> support_pool;  // image indices per class
    std::vector<std::vector<std::size_t>> query_pool;
    std::vector<std::vector<std::size_t>> combos;  // empty = any combination

    static EpisodePools create(const Dataset& ds, const EpisodeSpec& spec,
                               const PoolLimits& limits, std::uint64_t seed);
};

Episode sample_episode(const EpisodePools& pools, std::mt19937_64& rng);

// Convenience wrapper: build pools from (limits, seed drawn from rng) and
// sample a single episode.
Episode sample_episode(const Dataset& ds, const EpisodeSpec& spec, const PoolLimits& limits,
                       std::mt19937_64& rng);

// 4x the classes: originals plus 90/180/270-degree rotated copies registered
// as new classes. Requires square images.
Dataset task_augment_rotation(const Dataset& ds);

}  // namespace orthoshot
