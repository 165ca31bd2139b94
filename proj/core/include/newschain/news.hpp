#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "newschain/crypto.hpp"
#include "newschain/registry.hpp"

namespace newschain {

class Chain;

inline constexpr size_t kMaxNewsBytes = 16384;
inline constexpr size_t kEmbeddingDim = 1024;

// The ledger's transaction type: a signed news item carrying the publisher's
// status as of publication.
struct NewsRecord {
    std::string publisher_name;
    Status publisher_status = Status::NonVerified;  // snapshot; never Revoked
    crypto::PublicKey publisher_key{};
    int64_t timestamp = 0;
    std::string news_text;
    crypto::Signature signature{};

    Bytes signing_bytes() const;   // the five signed fields
    Bytes record_bytes() const;    // all six fields, signature included
    crypto::Digest256 digest() const;  // ledger leaf identity

    bool operator==(const NewsRecord&) const = default;
};

// Hashed bag-of-words counts. Deterministic function of the text; the
// embedding is the one swappable piece should a learned model replace it.
struct SimilarityVector {
    std::array<uint32_t, kEmbeddingDim> counts{};
    double norm = 0.0;
};

struct BestMatch {
    crypto::Digest256 record_digest{};
    double score = 0.0;
    uint64_t block_height = 0;
};

struct CorroborationResult {
    bool corroborated = false;
    std::optional<BestMatch> best_match;
    bool window_open = false;
};

struct NewsValidation {
    bool ok = false;
    std::string reason;
};

NewsRecord create_news(const crypto::KeyPair& keypair, const PublisherRecord& publisher,
                       const std::string& text, int64_t timestamp);

// Signature, registration, revocation, and stale-status checks against the
// registry's current view.
NewsValidation validate_news(const NewsRecord& record, const Registry& registry);

SimilarityVector embed(const std::string& text);

// Cosine over the count vectors; 0 when either side is empty. Always in [0,1].
double semantic_similarity(const SimilarityVector& a, const SimilarityVector& b);

// Looks for a sufficiently similar record from some other, Verified publisher
// within +/- window_w blocks of the record's own block. view_height bounds
// the scan (and the window-open test) so epoch processing is reproducible
// from any later chain state; 0 means the current head.
CorroborationResult corroborate(const NewsRecord& record, const Chain& chain,
                                const Registry& registry, const ReputationPolicy& policy,
                                uint64_t view_height = 0);

}  // namespace newschain
