#include <gtest/gtest.h>

#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "oracles/oracles.hpp"
#include "parascrape/jobs.hpp"
#include "parascrape/mapreduce.hpp"

using namespace parascrape;

namespace {

KeyValuePair kv(std::string k, std::int64_t v) { return {std::move(k), v}; }

mr::Reducer summing() {
    return [](const std::string& k, const std::vector<Value>& vs) {
        std::int64_t s = 0;
        for (const auto& v : vs) s += static_cast<std::int64_t>(*as_number(v));
        return KeyValuePair{k, s};
    };
}

PipelineConfig cfg(std::size_t workers, std::size_t chunks) {
    PipelineConfig c;
    c.worker_count = workers;
    c.chunking = ChunkCount{chunks};
    return c;
}

}  // namespace

TEST(Chunking, Sizes) {
    EXPECT_EQ(mr::chunk_sizes(10, ChunkCount{4}), (std::vector<std::size_t>{3, 3, 2, 2}));
    EXPECT_EQ(mr::chunk_sizes(10, ChunkSize{3}), (std::vector<std::size_t>{3, 3, 3, 1}));
    EXPECT_EQ(mr::chunk_sizes(5, ChunkSize{3}), (std::vector<std::size_t>{3, 2}));
    EXPECT_EQ(mr::chunk_sizes(3, ChunkCount{8}), (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_TRUE(mr::chunk_sizes(0, ChunkCount{4}).empty());
    auto big = mr::chunk_sizes(10000, ChunkCount{26});
    EXPECT_EQ(big.size(), 26u);
    EXPECT_EQ(std::accumulate(big.begin(), big.end(), std::size_t{0}), 10000u);
    EXPECT_LE(*std::max_element(big.begin(), big.end()) - *std::min_element(big.begin(), big.end()), 1u);
}

TEST(Chunking, PartitionsInOrder) {
    std::vector<int> items(17);
    std::iota(items.begin(), items.end(), 0);
    for (std::size_t k = 1; k <= 20; ++k) {
        auto chunks = mr::make_chunks(items, ChunkCount{k});
        std::vector<int> flat;
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            EXPECT_EQ(chunks[i].index, i);
            flat.insert(flat.end(), chunks[i].records.begin(), chunks[i].records.end());
        }
        EXPECT_EQ(flat, items);
    }
}

TEST(Pool, StripedAssignment) {
    std::mutex mu;
    std::map<std::size_t, std::thread::id> owner;
    auto per = mr::run_pool(8, 4, [&](std::size_t t) {
        std::lock_guard lock(mu);
        owner[t] = std::this_thread::get_id();
    });
    EXPECT_EQ(per, (std::vector<std::size_t>{2, 2, 2, 2}));
    for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(owner[t], owner[t + 4]);
    EXPECT_EQ(mr::run_pool(3, 5, [](std::size_t) {}), (std::vector<std::size_t>{1, 1, 1, 0, 0}));

    auto c = cfg(4, 8);
    std::vector<std::string> lines(80, "x y");
    auto res = mr::execute(jobs::wordcount_job(c), lines);
    EXPECT_EQ(res.report.per_worker_items, (std::vector<std::size_t>{2, 2, 2, 2}));
}

TEST(Shuffle, GroupsAndOrders) {
    auto groups = mr::shuffle({kv("b", 1), kv("a", 2), kv("b", 3), kv("B", 4)});
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups[0], (GroupedPairs{"B", {std::int64_t{4}}}));
    EXPECT_EQ(groups[1], (GroupedPairs{"a", {std::int64_t{2}}}));
    EXPECT_EQ(groups[2], (GroupedPairs{"b", {std::int64_t{1}, std::int64_t{3}}}));
    EXPECT_TRUE(mr::shuffle({}).empty());
}

TEST(Reduce, OutputIndependentOfWorkersAndChunks) {
    std::mt19937_64 rng(3);
    auto corpus = oracle::random_corpus(rng, 3000);
    auto base = mr::execute(jobs::wordcount_job(cfg(1, 1)), corpus).results;
    auto want = oracle::word_counts(corpus);
    ASSERT_EQ(base.size(), want.size());
    for (const auto& p : base) EXPECT_EQ(*as_number(p.value), want.at(p.key));
    for (auto [w, k] : {std::pair{2, 3}, {4, 8}, {8, 64}, {3, 5000}}) {
        EXPECT_EQ(mr::execute(jobs::wordcount_job(cfg(w, k)), corpus).results, base);
        EXPECT_EQ(mr::execute(jobs::wordcount_job(cfg(w, k), true), corpus).results, base);
    }
}

TEST(Combiner, MatchesPlainReduce) {
    auto pairs = std::vector<KeyValuePair>{kv("a", 1), kv("b", 2), kv("a", 3)};
    auto combined = mr::combine_chunk(pairs, summing());
    EXPECT_EQ(combined, (std::vector<KeyValuePair>{kv("a", 4), kv("b", 2)}));
}

TEST(Map, MapperFailureIsRecordedPerChunk) {
    mr::JobSpec<int> job;
    job.mapper = [](const int& x) {
        if (x == 7) throw std::runtime_error("seven");
        return std::vector<KeyValuePair>{kv("n", 1)};
    };
    job.reducer = summing();
    job.config = cfg(2, 4);
    std::vector<int> items(20);
    std::iota(items.begin(), items.end(), 0);
    auto res = mr::execute(job, items);
    ASSERT_EQ(res.report.errors.size(), 1u);
    EXPECT_EQ(res.report.errors[0].item_id, "chunk:1/item:2");
    EXPECT_EQ(res.report.errors[0].phase, "map");
    EXPECT_EQ(res.results, std::vector<KeyValuePair>{kv("n", 15)});
}

TEST(Map, EmptyKeyIsAnError) {
    mr::JobSpec<int> job;
    job.mapper = [](const int&) { return std::vector<KeyValuePair>{kv("", 1)}; };
    job.reducer = summing();
    auto res = mr::execute(job, std::vector<int>{1});
    ASSERT_EQ(res.report.errors.size(), 1u);
    EXPECT_TRUE(res.results.empty());
}

TEST(Reduce, ReducerFailureNamesKey) {
    auto groups = mr::shuffle({kv("ok", 1), kv("bad", 1)});
    mr::Reducer r = [](const std::string& k, const std::vector<Value>& vs) {
        if (k == "bad") throw std::runtime_error("nope");
        return KeyValuePair{k, vs.front()};
    };
    auto res = mr::run_reduce(groups, r, 3);
    EXPECT_EQ(res.pairs, std::vector<KeyValuePair>{kv("ok", 1)});
    ASSERT_EQ(res.errors.size(), 1u);
    EXPECT_EQ(res.errors[0].phase, "reduce");
    EXPECT_NE(res.errors[0].item_id.find("bad"), std::string::npos);
}

TEST(Execute, OutputWithheldOnErrorUnlessPartial) {
    auto dir = oracle::scratch_dir("mr-out");
    mr::JobSpec<int> job;
    job.mapper = [](const int& x) {
        if (x == 0) throw std::runtime_error("zero");
        return std::vector<KeyValuePair>{kv("n", x)};
    };
    job.reducer = summing();
    job.config = cfg(2, 2);
    job.config.output_path = dir / "out.csv";
    auto res = mr::execute(job, std::vector<int>{0, 1, 2, 3});
    EXPECT_FALSE(res.output_written);
    EXPECT_FALSE(std::filesystem::exists(dir / "out.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "out.csv.report.json"));

    job.config.allow_partial = true;
    res = mr::execute(job, std::vector<int>{0, 1, 2, 3});
    EXPECT_TRUE(res.output_written);
    EXPECT_EQ(oracle::slurp(dir / "out.csv"), "key,value\nn,5\n");
}

TEST(Execute, Rejections) {
    mr::JobSpec<int> job;
    EXPECT_THROW(mr::execute(job, std::vector<int>{1}), std::invalid_argument);
    job = {};
    job.mapper = [](const int&) { return std::vector<KeyValuePair>{}; };
    job.reducer = summing();
    job.config.worker_count = 0;
    EXPECT_THROW(mr::execute(job, std::vector<int>{1}), ConfigError);
    job.config.worker_count = 1;
    auto empty = mr::execute(job, std::vector<int>{});
    EXPECT_TRUE(empty.results.empty());
    EXPECT_TRUE(empty.report.errors.empty());
}
