#include "newschain/consensus.hpp"

#include <algorithm>

#include "newschain/errors.hpp"
#include "newschain/merkle.hpp"
#include "newschain/news.hpp"

namespace newschain {

crypto::PublicKey poa_slot_authority(uint64_t height,
                                     std::span<const crypto::PublicKey> authorities) {
    if (authorities.empty())
        throw Error(ErrorCode::Config, "authority set is empty");
    return authorities[height % authorities.size()];
}

Bytes pow_preimage(uint64_t nonce, const crypto::Digest256& prev_hash,
                   std::span<const crypto::Digest256> record_digests) {
    std::vector<Bytes> fields;
    fields.reserve(record_digests.size() + 2);
    fields.push_back(to_bytes(be64(nonce)));
    fields.push_back(to_bytes(prev_hash));
    for (const auto& d : record_digests) fields.push_back(to_bytes(d));
    return crypto::canonical_encode(fields);
}

std::optional<uint64_t> pow_mine(const crypto::Digest256& prev_hash,
                                 std::span<const crypto::Digest256> record_digests,
                                 const PowTarget& target, uint64_t max_iterations) {
    for (uint64_t nonce = 0; nonce < max_iterations; ++nonce) {
        crypto::Digest256 d = crypto::digest(pow_preimage(nonce, prev_hash, record_digests));
        if (d < target) return nonce;
    }
    return std::nullopt;
}

bool pow_check(const Block& block, const PowTarget& target) {
    crypto::Digest256 d = crypto::digest(
        pow_preimage(block.header.nonce, block.header.prev_hash, block.record_digests()));
    return d < target;
}

Verdict validate_block(const Block& block, const BlockHeader& parent,
                       const Registry& registry, const GenesisConfig& config,
                       uint64_t allowed_slot_skip) {
    const BlockHeader& h = block.header;

    // 1: height continuity
    if (h.height != parent.height + 1)
        return Verdict::reject(1, "height " + std::to_string(h.height) +
                                      " does not follow parent height " +
                                      std::to_string(parent.height));

    // 2: hash pointer
    if (h.prev_hash != parent.hash())
        return Verdict::reject(2, "prev_hash does not match the parent header hash");

    // 3: monotone timestamp
    if (h.timestamp <= parent.timestamp)
        return Verdict::reject(3, "timestamp must exceed the parent timestamp");

    // 4: record shape and merkle commitment
    if (block.records.size() > config.max_block_records)
        return Verdict::reject(4, "block exceeds max_block_records");
    auto digests = block.record_digests();
    if (block.records.empty()) {
        if (h.merkle_root != crypto::kZeroDigest)
            return Verdict::reject(4, "empty block must carry a zero merkle root");
    } else if (h.merkle_root != merkle::merkle_root(digests)) {
        return Verdict::reject(4, "merkle root does not match the records");
    }
    for (size_t i = 0; i + 1 < digests.size(); ++i)
        for (size_t j = i + 1; j < digests.size(); ++j)
            if (digests[i] == digests[j])
                return Verdict::reject(4, "duplicate record in block");

    // 5: each record valid against the registry's current view
    for (const NewsRecord& r : block.records) {
        NewsValidation v = validate_news(r, registry);
        if (!v.ok)
            return Verdict::reject(5, "record from '" + r.publisher_name + "': " + v.reason);
    }

    // 6: consensus proof
    if (config.mode == Mode::PoA) {
        bool slot_ok = false;
        for (uint64_t skip = 0; skip <= allowed_slot_skip; ++skip) {
            if (h.producer_key == poa_slot_authority(h.height + skip, config.authorities)) {
                slot_ok = true;
                break;
            }
        }
        if (!slot_ok)
            return Verdict::reject(6, "producer is not an eligible slot authority");
        if (!crypto::verify(h.producer_key, h.preimage(), h.producer_sig))
            return Verdict::reject(6, "producer signature does not verify");
    } else {
        if (!pow_check(block, config.pow_target))
            return Verdict::reject(6, "puzzle digest is not below the target");
    }
    return Verdict::accept();
}

HeadRef fork_choice(std::span<const HeadRef> heads) {
    if (heads.empty()) throw Error(ErrorCode::InvalidArgument, "no heads to choose from");
    return *std::min_element(heads.begin(), heads.end(),
                             [](const HeadRef& a, const HeadRef& b) {
                                 if (a.height != b.height) return a.height > b.height;
                                 return a.hash < b.hash;
                             });
}

}  // namespace newschain
