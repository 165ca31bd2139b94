#pragma once

// Shared builders: a PoA (or PoW) network in a box — genesis config,
// directory-verified publishers, and helpers that mine well-formed blocks.

#include <string>
#include <utility>
#include <vector>

#include "newschain/consensus.hpp"
#include "newschain/ledger.hpp"
#include "newschain/news.hpp"
#include "newschain/registry.hpp"

namespace newschain::fixture {

inline crypto::KeyPair keypair_for(std::string_view label) {
    return crypto::generate_keypair(crypto::digest(as_bytes(label)));
}

inline crypto::Seed seed_for(std::string_view label) {
    return crypto::digest(as_bytes(label));
}

struct TestNet {
    GenesisConfig config;
    std::vector<crypto::KeyPair> authority_keys;
    std::vector<crypto::KeyPair> publisher_keys;
    Registry registry;
    Chain chain;
    int64_t clock = 0;
    size_t next_publisher = 0;

    TestNet(GenesisConfig cfg, std::vector<crypto::KeyPair> auths,
            std::vector<crypto::KeyPair> pubs, Registry reg)
        : config(std::move(cfg)),
          authority_keys(std::move(auths)),
          publisher_keys(std::move(pubs)),
          registry(std::move(reg)),
          chain(config) {}

    NewsRecord make_record(const std::string& text) {
        return make_record_by(next_publisher++ % publisher_keys.size(), text);
    }

    NewsRecord make_record_by(size_t publisher, const std::string& text) {
        const crypto::KeyPair& kp = publisher_keys.at(publisher);
        const PublisherRecord* pub = registry.find_by_key(kp.public_key);
        return create_news(kp, *pub, text, ++clock);
    }

    // Correct header for the next height: linked, merkle-committed, and
    // carrying the in-turn authority's signature (or a PoW solution).
    Block build_block(std::vector<NewsRecord> records) {
        Block b;
        b.records = std::move(records);
        b.header.height = chain.height() + 1;
        b.header.prev_hash = chain.head().header.hash();
        b.header.timestamp = ++clock;
        b.header.merkle_root = b.records.empty()
                                   ? crypto::kZeroDigest
                                   : merkle::merkle_root(b.record_digests());
        if (config.mode == Mode::PoA) {
            const size_t slot = b.header.height % authority_keys.size();
            b.header.producer_key = authority_keys[slot].public_key;
            b.header.producer_sig =
                crypto::sign(authority_keys[slot].secret_key, b.header.preimage());
        } else {
            auto nonce = pow_mine(b.header.prev_hash, b.record_digests(),
                                  config.pow_target, uint64_t{1} << 24);
            b.header.nonce = nonce.value();
        }
        return b;
    }

    const Block& mine(const std::vector<std::string>& texts) {
        std::vector<NewsRecord> records;
        records.reserve(texts.size());
        for (const std::string& t : texts) records.push_back(make_record(t));
        return accept(build_block(std::move(records)));
    }

    const Block& accept(const Block& b) {
        chain.append_block(b, [this](const Block& blk, const BlockHeader& parent) {
            return validate_block(blk, parent, registry, config);
        });
        return chain.head();
    }
};

// n_publishers directory-listed publishers, all enrolled Verified at height 0.
inline TestNet make_net(Mode mode, size_t n_authorities = 3, size_t n_publishers = 2,
                        ReputationPolicy policy = {}) {
    GenesisConfig cfg;
    cfg.mode = mode;
    cfg.policy = policy;
    std::vector<crypto::KeyPair> auths;
    for (size_t i = 0; i < n_authorities; ++i) {
        auths.push_back(keypair_for("authority-" + std::to_string(i)));
        cfg.authorities.push_back(auths.back().public_key);
    }
    if (mode == Mode::PoW) {
        cfg.authorities.clear();
        auths.clear();
        cfg.pow_target = kMaxPowTarget;
        cfg.pow_target[0] = 0x10;  // 4 leading zero bits; cheap to mine
    }

    TrustDirectory dir;
    std::vector<crypto::KeyPair> pubs;
    std::vector<crypto::KeyPair> dir_keys;
    for (size_t i = 0; i < n_publishers; ++i) {
        const std::string name = "publisher-" + std::to_string(i);
        dir_keys.push_back(keypair_for(name + "-directory"));
        dir.entries[name] = dir_keys.back().public_key;
        pubs.push_back(keypair_for(name + "-chain"));
    }

    Registry reg(dir, policy, /*nonce_seed=*/7);
    for (size_t i = 0; i < n_publishers; ++i) {
        const std::string name = "publisher-" + std::to_string(i);
        Challenge c = reg.issue_challenge(name, 0);
        crypto::Signature response = crypto::sign(dir_keys[i].secret_key, c.nonce);
        reg.enroll(name, response, seed_for(name + "-chain"), 0);
    }
    return TestNet(std::move(cfg), std::move(auths), std::move(pubs), std::move(reg));
}

inline TestNet make_poa_net(size_t n_authorities = 3, size_t n_publishers = 2,
                            ReputationPolicy policy = {}) {
    return make_net(Mode::PoA, n_authorities, n_publishers, policy);
}

}  // namespace newschain::fixture
