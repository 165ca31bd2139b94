#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "newschain/config.hpp"
#include "newschain/ledger.hpp"
#include "newschain/registry.hpp"

namespace newschain {

// Round-robin slot owner for the block at `height`.
crypto::PublicKey poa_slot_authority(uint64_t height, std::span<const crypto::PublicKey> authorities);

// The hash-puzzle preimage: nonce, then the parent hash pointer, then the
// ordered record digests.
Bytes pow_preimage(uint64_t nonce, const crypto::Digest256& prev_hash,
                   std::span<const crypto::Digest256> record_digests);

// Smallest nonce in [0, max_iterations) whose puzzle digest, read as a
// 256-bit big-endian integer, is below target. nullopt when exhausted.
std::optional<uint64_t> pow_mine(const crypto::Digest256& prev_hash,
                                 std::span<const crypto::Digest256> record_digests,
                                 const PowTarget& target, uint64_t max_iterations);

bool pow_check(const Block& block, const PowTarget& target);

// Fixed-order validation; the verdict reports the first failed rule:
//   1 height  2 prev-hash  3 timestamp  4 merkle/records  5 record validity
//   6 consensus (PoA producer/signature/slot, or PoW target)
// allowed_slot_skip is how many timed-out slot owners the validator has
// observed for this height; 0 demands the in-turn producer.
Verdict validate_block(const Block& block, const BlockHeader& parent,
                       const Registry& registry, const GenesisConfig& config,
                       uint64_t allowed_slot_skip = 0);

struct HeadRef {
    uint64_t height = 0;
    crypto::Digest256 hash{};

    bool operator==(const HeadRef&) const = default;
};

// Longest chain, ties broken by smaller header hash. Order-independent and
// idempotent, so every node picks the same head from the same candidate set.
HeadRef fork_choice(std::span<const HeadRef> heads);

}  // namespace newschain
