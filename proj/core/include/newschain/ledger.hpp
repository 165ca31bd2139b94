#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newschain/config.hpp"
#include "newschain/crypto.hpp"
#include "newschain/merkle.hpp"
#include "newschain/news.hpp"

namespace newschain {

struct BlockHeader {
    uint64_t height = 0;
    crypto::Digest256 prev_hash{};
    crypto::Digest256 merkle_root{};
    int64_t timestamp = 0;
    uint64_t nonce = 0;                    // PoW search value; 0 under PoA
    crypto::PublicKey producer_key{};      // all-zero in pure-PoW blocks
    crypto::Signature producer_sig{};      // excluded from the hashed preimage

    Bytes preimage() const;
    crypto::Digest256 hash() const;

    bool operator==(const BlockHeader&) const = default;
};

struct Block {
    BlockHeader header;
    std::vector<NewsRecord> records;

    std::vector<crypto::Digest256> record_digests() const;

    bool operator==(const Block&) const = default;
};

Block genesis_block(const GenesisConfig& config);

// Outcome of the block-validation callback given to append_block. rule is the
// 1-based index of the first check that failed (consensus module numbering).
struct Verdict {
    bool ok = true;
    int rule = 0;
    std::string reason;

    static Verdict accept() { return {}; }
    static Verdict reject(int rule, std::string reason) {
        return {false, rule, std::move(reason)};
    }
};

using BlockValidator = std::function<Verdict(const Block&, const BlockHeader& parent)>;

struct RecordLocation {
    uint64_t height = 0;
    uint32_t position = 0;
};

enum class ChainFault {
    None,
    Encoding,           // block line failed to parse or decode
    Structure,          // height sequence / genesis shape / record count
    PrevHash,
    MerkleRoot,
    RecordSignature,
    ProducerSignature,
};

const char* chain_fault_name(ChainFault f);

struct ChainVerifyReport {
    bool ok = true;
    uint64_t height = 0;  // lowest failing height when !ok
    ChainFault fault = ChainFault::None;
};

struct PoTCertificate {
    crypto::Digest256 record_digest{};
    uint64_t block_height = 0;
    merkle::MerkleProof merkle_proof;
    BlockHeader header;
};

// Hash-pointer chain of news blocks plus a record-digest index for O(1)
// lookup. Single-writer; concurrent readers must hold an immutable snapshot.
class Chain {
  public:
    explicit Chain(GenesisConfig config);

    const GenesisConfig& config() const { return config_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& block_at(uint64_t height) const;
    const Block& head() const { return blocks_.back(); }
    uint64_t height() const { return blocks_.back().header.height; }

    // prev-hash mismatch throws chain-fork; validator rejection throws
    // invalid-block carrying the failed rule.
    void append_block(const Block& block, const BlockValidator& validator);

    // Rollback used when switching to a heavier fork; genesis never pops.
    Block pop_block();

    std::optional<RecordLocation> find_record(const crypto::Digest256& digest) const;
    const NewsRecord& record_at(const RecordLocation& loc) const;
    size_t index_size() const { return index_.size(); }

  private:
    GenesisConfig config_;
    std::vector<Block> blocks_;
    std::map<crypto::Digest256, RecordLocation> index_;
};

// Storage-level tamper evidence: linkage, merkle roots, record signatures and
// producer signatures, reported at the lowest failing height.
ChainVerifyReport verify_chain(const Chain& chain);

// The same checks applied to a decoded block sequence (no Chain invariants
// assumed), used when loading possibly tampered files.
ChainVerifyReport verify_blocks(const std::vector<Block>& blocks, const GenesisConfig& config);

PoTCertificate proof_of_truthfulness(const Chain& chain, const crypto::Digest256& record_digest);

// True iff the certificate's header is one the caller trusts and the proof
// links record_digest to that header's merkle root. Performs at most
// path-length + 1 hash evaluations.
bool verify_truthfulness(const PoTCertificate& cert, const crypto::Digest256& record_digest,
                         const std::set<crypto::Digest256>& trusted_header_hashes);

}  // namespace newschain
