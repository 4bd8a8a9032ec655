#include "orthoshot/episodes.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <set>

#include "orthoshot/errors.hpp"
#include "orthoshot/rng.hpp"

namespace orthoshot {

namespace {

// C(n,k) saturating at a large sentinel to avoid overflow.
std::size_t binomial_saturating(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr std::size_t kCapValue = 1ULL << 62;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        if (r > kCapValue / (n - k + i)) return kCapValue;
        r = r * (n - k + i) / i;
    }
    return r;
}

// k distinct values from `pool` via partial Fisher-Yates on a scratch copy.
std::vector<std::size_t> draw_without_replacement(std::vector<std::size_t> pool, std::size_t k,
                                                  std::mt19937_64& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j =
            i + std::uniform_int_distribution<std::size_t>(0, pool.size() - 1 - i)(rng);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_task_combinations(const Dataset& ds,
                                                                  std::size_t n_way,
                                                                  std::size_t task_cap,
                                                                  std::mt19937_64& rng) {
    const std::size_t n = ds.n_classes();
    if (n_way == 0 || n_way > n)
        throw GeometryError("enumerate_task_combinations: n_way out of range");
    const std::size_t total = binomial_saturating(n, n_way);
    if (task_cap > total)
        throw GeometryError("enumerate_task_combinations: task_cap exceeds C(n_classes, n_way)");

    constexpr std::size_t kEnumerateLimit = 2'000'000;
    std::vector<std::vector<std::size_t>> all;
    if (total <= kEnumerateLimit) {
        // enumerate lexicographically, then take a uniform subset
        std::vector<std::size_t> combo(n_way);
        std::iota(combo.begin(), combo.end(), 0);
        while (true) {
            all.push_back(combo);
            // next combination
            std::size_t i = n_way;
            while (i > 0 && combo[i - 1] == n - n_way + i - 1) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t j = i; j < n_way; ++j) combo[j] = combo[j - 1] + 1;
        }
        if (task_cap == total) return all;
        std::vector<std::size_t> idx(all.size());
        std::iota(idx.begin(), idx.end(), 0);
        auto picked = draw_without_replacement(std::move(idx), task_cap, rng);
        std::sort(picked.begin(), picked.end());
        std::vector<std::vector<std::size_t>> out;
        out.reserve(task_cap);
        for (std::size_t i : picked) out.push_back(all[i]);
        return out;
    }

    // combination space too large to enumerate: rejection-sample sorted tuples
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> classes(n);
    std::iota(classes.begin(), classes.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    while (out.size() < task_cap) {
        auto combo = draw_without_replacement(classes, n_way, rng);
        std::sort(combo.begin(), combo.end());
        if (seen.insert(combo).second) out.push_back(std::move(combo));
    }
    return out;
}

EpisodePools EpisodePools::create(const Dataset& ds, const EpisodeSpec& spec,
                                  const PoolLimits& limits, std::uint64_t seed) {
    validate_dataset(ds);
    if (spec.n_way == 0 || spec.k_shot == 0 || spec.q_query == 0)
        throw GeometryError("episode spec: n_way, k_shot, q_query must be >= 1");
    if (ds.n_classes() < spec.n_way)
        throw GeometryError("episode spec: dataset has fewer classes than n_way");

    EpisodePools pools;
    pools.ds = &ds;
    pools.spec = spec;

    auto build_pool = [&](std::size_t cls, std::size_t cap, std::uint64_t stream) {
        const std::size_t n = ds.images[cls].size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        if (cap == 0 || cap >= n) {
            if (cap > n)
                std::cerr << "warning: pool cap " << cap << " exceeds class size " << n
                          << " for class '" << ds.class_ids[cls] << "', clamping\n";
            return idx;
        }
        if (limits.mode == PoolMode::random) {
            std::mt19937_64 rng = seeded_rng(seed, stream);
            idx = draw_without_replacement(std::move(idx), cap, rng);
            std::sort(idx.begin(), idx.end());
        } else {
            idx.resize(cap);
        }
        return idx;
    };

    for (std::size_t c = 0; c < ds.n_classes(); ++c) {
        pools.support_pool.push_back(build_pool(c, limits.support_cap, 2 * c));
        pools.query_pool.push_back(build_pool(c, limits.query_cap, 2 * c + 1));

        const auto& s = pools.support_pool.back();
        const auto& q = pools.query_pool.back();
        if (s.size() < spec.k_shot)
            throw GeometryError("episode pools: support pool smaller than k_shot for class '" +
                                ds.class_ids[c] + "'");
        std::size_t overlap = 0;
        for (std::size_t v : q)
            if (std::binary_search(s.begin(), s.end(), v)) ++overlap;
        const std::size_t worst_query = q.size() - std::min(spec.k_shot, overlap);
        if (worst_query < spec.q_query)
            throw GeometryError("episode pools: query pool cannot supply q_query disjoint items "
                                "for class '" + ds.class_ids[c] + "'");
    }

    if (limits.task_cap > 0) {
        std::mt19937_64 rng = seeded_rng(seed, 0xC0FFEE);
        pools.combos = enumerate_task_combinations(ds, spec.n_way, limits.task_cap, rng);
    }
    return pools;
}

Episode sample_episode(const EpisodePools& pools, std::mt19937_64& rng) {
    const Dataset& ds = *pools.ds;
    const EpisodeSpec& spec = pools.spec;

    std::vector<std::size_t> classes;
    if (!pools.combos.empty()) {
        classes = pools.combos[std::uniform_int_distribution<std::size_t>(
            0, pools.combos.size() - 1)(rng)];
    } else {
        std::vector<std::size_t> all(ds.n_classes());
        std::iota(all.begin(), all.end(), 0);
        classes = draw_without_replacement(std::move(all), spec.n_way, rng);
    }

    Episode ep;
    ep.class_map = classes;
    for (std::size_t local = 0; local < classes.size(); ++local) {
        const std::size_t cls = classes[local];
        const auto support_idx =
            draw_without_replacement(pools.support_pool[cls], spec.k_shot, rng);

        std::vector<std::size_t> remaining;
        remaining.reserve(pools.query_pool[cls].size());
        for (std::size_t v : pools.query_pool[cls])
            if (std::find(support_idx.begin(), support_idx.end(), v) == support_idx.end())
                remaining.push_back(v);
        const auto query_idx = draw_without_replacement(std::move(remaining), spec.q_query, rng);

        for (std::size_t i : support_idx) ep.support.emplace_back(ds.images[cls][i], local);
        for (std::size_t i : query_idx) ep.query.emplace_back(ds.images[cls][i], local);
    }
    return ep;
}

Episode sample_episode(const Dataset& ds, const EpisodeSpec& spec, const PoolLimits& limits,
                       std::mt19937_64& rng) {
    const std::uint64_t pool_seed = rng();
    EpisodePools pools = EpisodePools::create(ds, spec, limits, pool_seed);
    return sample_episode(pools, rng);
}

Dataset task_augment_rotation(const Dataset& ds) {
    validate_dataset(ds);
    for (const auto& cls : ds.images)
        for (const auto& img : cls)
            if (img.height != img.width)
                throw GeometryError("task_augment_rotation: images must be square");

    Dataset out;
    out.split = ds.split;
    out.class_ids = ds.class_ids;
    out.images = ds.images;
    static const char* suffix[] = {"#r90", "#r180", "#r270"};
    for (int turn = 1; turn <= 3; ++turn) {
        for (std::size_t c = 0; c < ds.n_classes(); ++c) {
            out.class_ids.push_back(ds.class_ids[c] + suffix[turn - 1]);
            std::vector<Image> rotated;
            rotated.reserve(ds.images[c].size());
            for (const Image& img : ds.images[c]) rotated.push_back(rotate90(img, turn));
            out.images.push_back(std::move(rotated));
        }
    }
    return out;
}

}  // namespace orthoshot
