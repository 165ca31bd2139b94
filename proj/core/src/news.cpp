#include "newschain/news.hpp"

#include <algorithm>
#include <cmath>

#include "newschain/errors.hpp"
#include "newschain/ledger.hpp"
#include "newschain/merkle.hpp"

namespace newschain {

Bytes NewsRecord::signing_bytes() const {
    uint8_t status_byte = static_cast<uint8_t>(publisher_status);
    return crypto::canonical_encode({as_bytes(publisher_name),
                                     ByteView{&status_byte, 1},
                                     publisher_key,
                                     be64_signed(timestamp),
                                     as_bytes(news_text)});
}

Bytes NewsRecord::record_bytes() const {
    uint8_t status_byte = static_cast<uint8_t>(publisher_status);
    return crypto::canonical_encode({as_bytes(publisher_name),
                                     ByteView{&status_byte, 1},
                                     publisher_key,
                                     be64_signed(timestamp),
                                     as_bytes(news_text),
                                     signature});
}

crypto::Digest256 NewsRecord::digest() const {
    return merkle::leaf_digest(record_bytes());
}

NewsRecord create_news(const crypto::KeyPair& keypair, const PublisherRecord& publisher,
                       const std::string& text, int64_t timestamp) {
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "news text must be nonempty");
    if (text.size() > kMaxNewsBytes)
        throw Error(ErrorCode::InvalidArgument, "news text exceeds " +
                                                    std::to_string(kMaxNewsBytes) + " bytes");
    if (publisher.status == Status::Revoked)
        throw Error(ErrorCode::Revoked, "publisher '" + publisher.name + "' is revoked");
    if (std::find(publisher.public_keys.begin(), publisher.public_keys.end(),
                  keypair.public_key) == publisher.public_keys.end())
        throw Error(ErrorCode::InvalidArgument,
                    "signing key does not belong to publisher '" + publisher.name + "'");

    NewsRecord rec;
    rec.publisher_name = publisher.name;
    rec.publisher_status = publisher.status;
    rec.publisher_key = keypair.public_key;
    rec.timestamp = timestamp;
    rec.news_text = text;
    rec.signature = crypto::sign(keypair.secret_key, rec.signing_bytes());
    return rec;
}

NewsValidation validate_news(const NewsRecord& record, const Registry& registry) {
    if (record.news_text.empty()) return {false, "empty news text"};
    if (record.news_text.size() > kMaxNewsBytes) return {false, "news text too long"};
    if (record.publisher_status == Status::Revoked)
        return {false, "record claims Revoked status"};
    if (!crypto::verify(record.publisher_key, record.signing_bytes(), record.signature))
        return {false, "signature does not verify"};

    const PublisherRecord* pub = registry.find_by_key(record.publisher_key);
    if (!pub) return {false, "publisher key is not enrolled"};
    if (pub->name != record.publisher_name)
        return {false, "publisher name does not match the enrolled key"};
    if (pub->status == Status::Revoked) return {false, "publisher is revoked"};
    if (record.publisher_status != pub->status)
        return {false, "stale publisher status snapshot"};
    return {true, ""};
}

namespace {

size_t token_slot(std::string_view token) {
    Bytes pre = crypto::canonical_encode({as_bytes("tok"), as_bytes(token)});
    crypto::Digest256 d = crypto::digest(pre);
    return static_cast<size_t>(read_be64(d) % kEmbeddingDim);
}

}  // namespace

SimilarityVector embed(const std::string& text) {
    SimilarityVector vec;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            ++vec.counts[token_slot(token)];
            token.clear();
        }
    };
    for (char c : text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))
            token.push_back(c);
        else
            flush();
    }
    flush();

    double sq = 0.0;
    for (uint32_t c : vec.counts) sq += static_cast<double>(c) * static_cast<double>(c);
    vec.norm = std::sqrt(sq);
    return vec;
}

double semantic_similarity(const SimilarityVector& a, const SimilarityVector& b) {
    if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
    double dot = 0.0;
    for (size_t i = 0; i < kEmbeddingDim; ++i)
        dot += static_cast<double>(a.counts[i]) * static_cast<double>(b.counts[i]);
    return dot / (a.norm * b.norm);
}

CorroborationResult corroborate(const NewsRecord& record, const Chain& chain,
                                const Registry& registry, const ReputationPolicy& policy,
                                uint64_t view_height) {
    if (view_height == 0 || view_height > chain.height()) view_height = chain.height();

    crypto::Digest256 self = record.digest();
    auto loc = chain.find_record(self);
    if (!loc)
        throw Error(ErrorCode::NotOnChain, "record is not on the chain being scanned");
    const uint64_t h = loc->height;

    const uint64_t lo = h > policy.window_w ? h - policy.window_w : 1;
    const uint64_t hi = std::min(h + policy.window_w, view_height);

    CorroborationResult result;
    result.window_open = h + policy.window_w > view_height;

    SimilarityVector target = embed(record.news_text);
    for (uint64_t bh = lo; bh <= hi; ++bh) {
        for (const NewsRecord& other : chain.block_at(bh).records) {
            if (other.publisher_key == record.publisher_key) continue;
            const PublisherRecord* pub = registry.find_by_key(other.publisher_key);
            // Aliases of the same organization never corroborate each other.
            if (!pub || pub->status != Status::Verified) continue;
            if (registry.find_by_key(record.publisher_key) == pub) continue;

            double score = semantic_similarity(target, embed(other.news_text));
            if (!result.best_match || score > result.best_match->score)
                result.best_match = BestMatch{other.digest(), score, bh};
        }
    }
    if (result.best_match && result.best_match->score >= policy.theta)
        result.corroborated = true;
    return result;
}

}  // namespace newschain
