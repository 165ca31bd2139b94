#pragma once

#include <cstdint>
#include <vector>

#include "newschain/crypto.hpp"
#include "newschain/registry.hpp"

namespace newschain {

enum class Mode : uint8_t { PoA = 0, PoW = 1 };

inline const char* mode_name(Mode m) { return m == Mode::PoA ? "PoA" : "PoW"; }

// 256-bit big-endian threshold for the hash puzzle.
using PowTarget = std::array<uint8_t, 32>;

inline constexpr PowTarget kMaxPowTarget = [] {
    PowTarget t{};
    for (auto& b : t) b = 0xff;
    return t;
}();

// Chain parameters fixed at genesis. Their digest is pinned into the genesis
// block's merkle_root field, so two chains agree on parameters iff they agree
// on the genesis hash.
struct GenesisConfig {
    Mode mode = Mode::PoA;
    std::vector<crypto::PublicKey> authorities;  // order fixed; PoA slot schedule
    PowTarget pow_target = kMaxPowTarget;
    uint64_t max_block_records = 64;
    ReputationPolicy policy;

    void validate() const;
    crypto::Digest256 sentinel_digest() const;

    bool operator==(const GenesisConfig&) const = default;
};

}  // namespace newschain
