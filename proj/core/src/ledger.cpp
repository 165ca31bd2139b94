#include "newschain/ledger.hpp"

#include <algorithm>

#include "newschain/errors.hpp"

namespace newschain {

Bytes BlockHeader::preimage() const {
    return crypto::canonical_encode({be64(height), prev_hash, merkle_root,
                                     be64_signed(timestamp), be64(nonce), producer_key});
}

crypto::Digest256 BlockHeader::hash() const {
    return crypto::digest(preimage());
}

std::vector<crypto::Digest256> Block::record_digests() const {
    std::vector<crypto::Digest256> out;
    out.reserve(records.size());
    for (const NewsRecord& r : records) out.push_back(r.digest());
    return out;
}

Block genesis_block(const GenesisConfig& config) {
    config.validate();
    Block b;
    b.header.height = 0;
    b.header.prev_hash = crypto::kZeroDigest;
    b.header.merkle_root = config.sentinel_digest();
    b.header.timestamp = 0;
    b.header.nonce = 0;
    b.header.producer_key = crypto::kZeroKey;
    b.header.producer_sig = crypto::kZeroSignature;
    return b;
}

const char* chain_fault_name(ChainFault f) {
    switch (f) {
        case ChainFault::None: return "none";
        case ChainFault::Encoding: return "encoding";
        case ChainFault::Structure: return "structure";
        case ChainFault::PrevHash: return "prev-hash";
        case ChainFault::MerkleRoot: return "merkle-root";
        case ChainFault::RecordSignature: return "record-signature";
        case ChainFault::ProducerSignature: return "producer-signature";
    }
    return "?";
}

Chain::Chain(GenesisConfig config) : config_(std::move(config)) {
    blocks_.push_back(genesis_block(config_));
}

const Block& Chain::block_at(uint64_t height) const {
    if (height >= blocks_.size())
        throw Error(ErrorCode::InvalidArgument,
                    "no block at height " + std::to_string(height));
    return blocks_[height];
}

void Chain::append_block(const Block& block, const BlockValidator& validator) {
    const BlockHeader& parent = head().header;
    if (block.header.prev_hash != parent.hash())
        throw Error(ErrorCode::ChainFork,
                    "block at height " + std::to_string(block.header.height) +
                        " does not extend the current head");
    if (validator) {
        Verdict v = validator(block, parent);
        if (!v.ok) throw Error(ErrorCode::InvalidBlock, v.reason, v.rule);
    }
    const uint64_t h = block.header.height;
    blocks_.push_back(block);
    for (uint32_t i = 0; i < blocks_.back().records.size(); ++i)
        index_[blocks_.back().records[i].digest()] = {h, i};
}

Block Chain::pop_block() {
    if (blocks_.size() == 1)
        throw Error(ErrorCode::InvalidArgument, "cannot pop the genesis block");
    Block b = std::move(blocks_.back());
    blocks_.pop_back();
    for (const NewsRecord& r : b.records) index_.erase(r.digest());
    return b;
}

std::optional<RecordLocation> Chain::find_record(const crypto::Digest256& digest) const {
    auto it = index_.find(digest);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const NewsRecord& Chain::record_at(const RecordLocation& loc) const {
    const Block& b = block_at(loc.height);
    if (loc.position >= b.records.size())
        throw Error(ErrorCode::InvalidArgument, "record position out of range");
    return b.records[loc.position];
}

ChainVerifyReport verify_blocks(const std::vector<Block>& blocks, const GenesisConfig& config) {
    if (blocks.empty()) return {false, 0, ChainFault::Structure};

    const Block expected_genesis = genesis_block(config);
    if (blocks[0] != expected_genesis) return {false, 0, ChainFault::Structure};

    for (uint64_t h = 1; h < blocks.size(); ++h) {
        const Block& b = blocks[h];
        if (b.header.height != h) return {false, h, ChainFault::Structure};
        if (b.records.size() > config.max_block_records)
            return {false, h, ChainFault::Structure};
        if (b.header.prev_hash != blocks[h - 1].header.hash())
            return {false, h, ChainFault::PrevHash};

        if (b.records.empty()) {
            if (b.header.merkle_root != crypto::kZeroDigest)
                return {false, h, ChainFault::MerkleRoot};
        } else if (b.header.merkle_root != merkle::merkle_root(b.record_digests())) {
            return {false, h, ChainFault::MerkleRoot};
        }

        for (const NewsRecord& r : b.records)
            if (!crypto::verify(r.publisher_key, r.signing_bytes(), r.signature))
                return {false, h, ChainFault::RecordSignature};

        if (config.mode == Mode::PoA &&
            !crypto::verify(b.header.producer_key, b.header.preimage(), b.header.producer_sig))
            return {false, h, ChainFault::ProducerSignature};
    }
    return {true, 0, ChainFault::None};
}

ChainVerifyReport verify_chain(const Chain& chain) {
    return verify_blocks(chain.blocks(), chain.config());
}

PoTCertificate proof_of_truthfulness(const Chain& chain, const crypto::Digest256& record_digest) {
    auto loc = chain.find_record(record_digest);
    if (!loc) throw Error(ErrorCode::NotOnChain, "record digest is not on this chain");

    const Block& b = chain.block_at(loc->height);
    PoTCertificate cert;
    cert.record_digest = record_digest;
    cert.block_height = loc->height;
    cert.merkle_proof = merkle::merkle_proof(b.record_digests(), loc->position);
    cert.header = b.header;
    return cert;
}

bool verify_truthfulness(const PoTCertificate& cert, const crypto::Digest256& record_digest,
                         const std::set<crypto::Digest256>& trusted_header_hashes) {
    if (cert.record_digest != record_digest) return false;
    if (!trusted_header_hashes.count(cert.header.hash())) return false;
    return merkle::verify_proof(record_digest, cert.merkle_proof, cert.header.merkle_root);
}

}  // namespace newschain
