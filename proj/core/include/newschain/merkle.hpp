#pragma once

#include <cstdint>
#include <vector>

#include "newschain/crypto.hpp"

namespace newschain::merkle {

using crypto::Digest256;

enum class Side : uint8_t { Left = 0, Right = 1 };

struct ProofStep {
    Digest256 sibling{};
    Side side = Side::Left;  // which side of the running hash the sibling sits on

    bool operator==(const ProofStep&) const = default;
};

// Bottom-up sibling path. Empty for a single-leaf tree, ceil(log2 n) steps
// otherwise (odd levels duplicate their last node).
struct MerkleProof {
    uint64_t leaf_index = 0;
    std::vector<ProofStep> path;

    bool operator==(const MerkleProof&) const = default;
};

// Leaves are hashed by the caller with a 0x00 prefix; internal nodes carry a
// 0x01 prefix field so a leaf can never be reinterpreted as an interior node.
Digest256 leaf_digest(ByteView data);
Digest256 internal_node(const Digest256& left, const Digest256& right);

Digest256 merkle_root(std::span<const Digest256> leaves);
MerkleProof merkle_proof(std::span<const Digest256> leaves, uint64_t index);

// Recomputes the branch; performs exactly proof.path.size() hash evaluations.
bool verify_proof(const Digest256& leaf, const MerkleProof& proof, const Digest256& root);

}  // namespace newschain::merkle
