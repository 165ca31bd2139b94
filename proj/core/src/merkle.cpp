#include "newschain/merkle.hpp"

#include "newschain/errors.hpp"

namespace newschain::merkle {

namespace {
constexpr uint8_t kLeafPrefix = 0x00;
constexpr uint8_t kInternalPrefix = 0x01;
}  // namespace

Digest256 leaf_digest(ByteView data) {
    Bytes buf;
    buf.reserve(1 + data.size());
    buf.push_back(kLeafPrefix);
    append(buf, data);
    return crypto::digest(buf);
}

Digest256 internal_node(const Digest256& left, const Digest256& right) {
    const uint8_t prefix = kInternalPrefix;
    return crypto::digest(crypto::canonical_encode({ByteView{&prefix, 1}, left, right}));
}

Digest256 merkle_root(std::span<const Digest256> leaves) {
    if (leaves.empty())
        throw Error(ErrorCode::InvalidArgument, "merkle_root: empty leaf list");
    std::vector<Digest256> level(leaves.begin(), leaves.end());
    while (level.size() > 1) {
        if (level.size() % 2 != 0) level.push_back(level.back());
        std::vector<Digest256> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2)
            next.push_back(internal_node(level[i], level[i + 1]));
        level = std::move(next);
    }
    return level[0];
}

MerkleProof merkle_proof(std::span<const Digest256> leaves, uint64_t index) {
    if (leaves.empty())
        throw Error(ErrorCode::InvalidArgument, "merkle_proof: empty leaf list");
    if (index >= leaves.size())
        throw Error(ErrorCode::InvalidArgument, "merkle_proof: index out of range");

    MerkleProof proof;
    proof.leaf_index = index;
    std::vector<Digest256> level(leaves.begin(), leaves.end());
    size_t pos = static_cast<size_t>(index);
    while (level.size() > 1) {
        if (level.size() % 2 != 0) level.push_back(level.back());
        size_t sibling = (pos % 2 == 0) ? pos + 1 : pos - 1;
        proof.path.push_back({level[sibling],
                              pos % 2 == 0 ? Side::Right : Side::Left});
        std::vector<Digest256> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2)
            next.push_back(internal_node(level[i], level[i + 1]));
        level = std::move(next);
        pos /= 2;
    }
    return proof;
}

bool verify_proof(const Digest256& leaf, const MerkleProof& proof, const Digest256& root) {
    Digest256 acc = leaf;
    for (const ProofStep& step : proof.path) {
        acc = step.side == Side::Right ? internal_node(acc, step.sibling)
                                       : internal_node(step.sibling, acc);
    }
    return acc == root;
}

}  // namespace newschain::merkle
