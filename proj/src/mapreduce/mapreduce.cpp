#include "parascrape/mapreduce.hpp"

#include <algorithm>
#include <thread>

namespace parascrape::mr {

std::vector<std::size_t> chunk_sizes(std::size_t n, const ChunkPolicy& policy) {
    std::vector<std::size_t> sizes;
    if (n == 0) return sizes;
    if (const auto* c = std::get_if<ChunkCount>(&policy)) {
        if (c->count < 1) throw std::invalid_argument("chunk_count must be >= 1");
        const std::size_t k = std::min(c->count, n);
        const std::size_t base = n / k, extra = n % k;
        for (std::size_t i = 0; i < k; ++i) sizes.push_back(base + (i < extra ? 1 : 0));
    } else {
        const std::size_t s = std::get<ChunkSize>(policy).size;
        if (s < 1) throw std::invalid_argument("chunk_size must be >= 1");
        for (std::size_t done = 0; done < n; done += s) sizes.push_back(std::min(s, n - done));
    }
    return sizes;
}

std::vector<std::size_t> run_pool(std::size_t tasks, std::size_t workers, const std::function<void(std::size_t)>& task) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    std::vector<std::size_t> per_worker(workers, 0);
    auto body = [&](std::size_t w) {
        for (std::size_t i = w; i < tasks; i += workers) {
            task(i);
            ++per_worker[w];
        }
    };
    const std::size_t active = std::min(workers, tasks);
    if (active <= 1) {
        if (active == 1) body(0);
        return per_worker;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(active);
        for (std::size_t w = 0; w < active; ++w) pool.emplace_back(body, w);
    }
    return per_worker;
}

std::vector<GroupedPairs> shuffle(std::vector<KeyValuePair> pairs) {
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const KeyValuePair& a, const KeyValuePair& b) { return a.key < b.key; });
    std::vector<GroupedPairs> groups;
    for (auto& kv : pairs) {
        if (groups.empty() || groups.back().key != kv.key) groups.push_back({std::move(kv.key), {}});
        groups.back().values.push_back(std::move(kv.value));
    }
    return groups;
}

std::vector<KeyValuePair> combine_chunk(std::vector<KeyValuePair> pairs, const Reducer& combiner) {
    auto groups = shuffle(std::move(pairs));
    std::vector<KeyValuePair> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(combiner(g.key, g.values));
    return out;
}

PhaseResult run_reduce(const std::vector<GroupedPairs>& groups, const Reducer& reducer, std::size_t workers) {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    struct Slot {
        std::optional<KeyValuePair> pair;
        std::optional<RunError> error;
    };
    std::vector<Slot> slots(groups.size());

    // Groups are handed out in contiguous blocks, a few per worker.
    const std::size_t blocks_wanted = std::max<std::size_t>(1, workers * 4);
    const std::size_t block = std::max<std::size_t>(1, (groups.size() + blocks_wanted - 1) / blocks_wanted);
    const std::size_t blocks = (groups.size() + block - 1) / block;

    PhaseResult out;
    out.per_worker = run_pool(blocks, workers, [&](std::size_t b) {
        const std::size_t end = std::min(groups.size(), (b + 1) * block);
        for (std::size_t g = b * block; g < end; ++g) {
            try {
                slots[g].pair = reducer(groups[g].key, groups[g].values);
            } catch (const std::exception& e) {
                slots[g].error = RunError{groups[g].key, "reduce", e.what()};
            }
        }
    });
    out.pairs.reserve(groups.size());
    for (auto& s : slots) {
        if (s.pair) out.pairs.push_back(std::move(*s.pair));
        if (s.error) out.errors.push_back(std::move(*s.error));
    }
    return out;
}

}  // namespace parascrape::mr
