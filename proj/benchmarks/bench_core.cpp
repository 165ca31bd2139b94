#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "newschain/consensus.hpp"
#include "newschain/ledger.hpp"
#include "newschain/news.hpp"
#include "newschain/sim.hpp"

using namespace newschain;

namespace {

crypto::KeyPair keypair_for(const std::string& label) {
    return crypto::generate_keypair(crypto::digest(as_bytes(label)));
}

std::vector<crypto::Digest256> make_leaves(size_t n) {
    std::vector<crypto::Digest256> leaves;
    leaves.reserve(n);
    for (size_t i = 0; i < n; ++i)
        leaves.push_back(merkle::leaf_digest(as_bytes("leaf-" + std::to_string(i))));
    return leaves;
}

// A valid PoA chain: producers rotate round-robin and sign their headers,
// records are real signed news items. verify_chain re-checks all of it.
Chain build_chain(size_t blocks, size_t records_per_block) {
    std::vector<crypto::KeyPair> authorities = {keypair_for("bench-auth-0"),
                                                keypair_for("bench-auth-1"),
                                                keypair_for("bench-auth-2")};
    GenesisConfig cfg;
    cfg.mode = Mode::PoA;
    for (const auto& a : authorities) cfg.authorities.push_back(a.public_key);

    crypto::KeyPair pub = keypair_for("bench-publisher");
    PublisherRecord shim{"bench-wire", {pub.public_key}, Status::NonVerified, 0, 0, 0};

    Chain chain(cfg);
    size_t item = 0;
    for (size_t h = 1; h <= blocks; ++h) {
        Block b;
        b.header.height = h;
        b.header.prev_hash = chain.head().header.hash();
        b.header.timestamp = static_cast<int64_t>(h);
        for (size_t r = 0; r < records_per_block; ++r) {
            ++item;
            b.records.push_back(create_news(pub, shim, "bench story " + std::to_string(item),
                                            static_cast<int64_t>(item)));
        }
        b.header.merkle_root = merkle::merkle_root(b.record_digests());
        const auto& producer = authorities[h % authorities.size()];
        b.header.producer_key = producer.public_key;
        b.header.producer_sig = crypto::sign(producer.secret_key, b.header.preimage());
        chain.append_block(b, nullptr);
    }
    return chain;
}

void BM_Digest(benchmark::State& state) {
    std::vector<uint8_t> payload(static_cast<size_t>(state.range(0)), 0xab);
    for (auto _ : state) benchmark::DoNotOptimize(crypto::digest(payload));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Digest)->Arg(64)->Arg(4096);

void BM_SignVerify(benchmark::State& state) {
    auto kp = keypair_for("bench-signer");
    Bytes msg = to_bytes("a short news record preimage");
    for (auto _ : state) {
        auto sig = crypto::sign(kp.secret_key, msg);
        benchmark::DoNotOptimize(crypto::verify(kp.public_key, msg, sig));
    }
}
BENCHMARK(BM_SignVerify);

void BM_MerkleRoot(benchmark::State& state) {
    auto leaves = make_leaves(static_cast<size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(merkle::merkle_root(leaves));
}
BENCHMARK(BM_MerkleRoot)->Arg(64)->Arg(1024);

void BM_MerkleProofVerify(benchmark::State& state) {
    auto leaves = make_leaves(1024);
    auto root = merkle::merkle_root(leaves);
    auto proof = merkle::merkle_proof(leaves, 777);
    for (auto _ : state)
        benchmark::DoNotOptimize(merkle::verify_proof(leaves[777], proof, root));
}
BENCHMARK(BM_MerkleProofVerify);

void BM_PowMine(benchmark::State& state) {
    PowTarget target{};
    target[0] = 0x01;  // 8 leading zero bits, ~256 attempts per block
    auto digests = make_leaves(4);
    uint64_t i = 0;
    for (auto _ : state) {
        auto prev = crypto::digest(as_bytes("bench-prev-" + std::to_string(i++)));
        benchmark::DoNotOptimize(pow_mine(prev, digests, target, uint64_t{1} << 24));
    }
}
BENCHMARK(BM_PowMine);

void BM_Embed(benchmark::State& state) {
    std::string text;
    for (int i = 0; i < 80; ++i) text += "word" + std::to_string(i % 23) + " ";
    for (auto _ : state) benchmark::DoNotOptimize(embed(text));
}
BENCHMARK(BM_Embed);

void BM_Similarity(benchmark::State& state) {
    auto a = embed("council approves the new river bridge after the spring review");
    auto b = embed("the river bridge wins council approval following a spring review");
    for (auto _ : state) benchmark::DoNotOptimize(semantic_similarity(a, b));
}
BENCHMARK(BM_Similarity);

void BM_VerifyChain(benchmark::State& state) {
    Chain chain = build_chain(static_cast<size_t>(state.range(0)), 2);
    for (auto _ : state) {
        auto report = verify_chain(chain);
        if (!report.ok) state.SkipWithError("chain failed verification");
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_VerifyChain)->Arg(50);

void BM_Simulation(benchmark::State& state) {
    sim::SimConfig cfg;
    cfg.rng_seed = 5;
    cfg.num_rounds = 8;
    cfg.genesis.mode = Mode::PoA;
    for (int i = 0; i < 4; ++i) {
        sim::NodeSpec n;
        n.name = "miner-" + std::to_string(i);
        n.role = sim::Role::Miner;
        n.key_seed = crypto::digest(as_bytes(n.name));
        cfg.genesis.authorities.push_back(crypto::generate_keypair(n.key_seed).public_key);
        cfg.nodes.push_back(n);
    }
    sim::NodeSpec p;
    p.name = "wire";
    p.role = sim::Role::Publisher;
    p.key_seed = crypto::digest(as_bytes(p.name));
    cfg.nodes.push_back(p);
    cfg.script.directory.push_back("wire");
    cfg.script.publications.push_back({0, "wire", "harbor dredging resumes this week"});
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_simulation(cfg));
}
BENCHMARK(BM_Simulation);

}  // namespace

BENCHMARK_MAIN();
