#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newschain/crypto.hpp"

namespace newschain {

class Chain;

enum class Status : uint8_t { NonVerified = 0, Verified = 1, Revoked = 2 };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::NonVerified: return "NonVerified";
        case Status::Verified: return "Verified";
        case Status::Revoked: return "Revoked";
    }
    return "?";
}

enum class RevokeReason : uint8_t { Voluntary = 0, Anomalous = 1 };

struct PublisherRecord {
    std::string name;
    std::vector<crypto::PublicKey> public_keys;  // first entry is the primary identity
    Status status = Status::NonVerified;
    int64_t reputation = 0;
    uint64_t enrolled_at = 0;            // block height at enrollment
    uint64_t last_epoch_evaluated = 0;

    bool operator==(const PublisherRecord&) const = default;
};

// Local stand-in for the out-of-band mapping of organization names to their
// known real-world public keys.
struct TrustDirectory {
    std::map<std::string, crypto::PublicKey> entries;

    const crypto::PublicKey* find(const std::string& name) const {
        auto it = entries.find(name);
        return it == entries.end() ? nullptr : &it->second;
    }
};

struct Challenge {
    std::string applicant_name;
    std::array<uint8_t, 32> nonce{};
    uint64_t issued_at = 0;   // block height
    uint64_t expires_at = 0;  // unusable once the chain reaches this height
    bool consumed = false;
};

struct ReputationPolicy {
    double theta = 0.80;               // similarity threshold for corroboration
    uint64_t window_w = 20;            // corroboration window, +/- blocks
    uint64_t epoch_e = 10;             // blocks per reputation epoch
    int64_t t_promote = 5;
    int64_t t_revoke = -3;
    int64_t delta_corroborated = 1;
    int64_t delta_unsupported = -1;
    uint64_t evaluation_period_p = 10;  // epochs a publisher may stay NonVerified

    void validate() const;
    bool operator==(const ReputationPolicy&) const = default;
};

// Registry commands, logged in execution order. Replaying the log against
// the same directory, policy, seed and chain reproduces the registry state
// byte for byte. Anomalous revocations are effects of Epoch entries, never
// commands of their own.
struct RegistryEvent {
    enum class Kind : uint8_t { Challenge, Enroll, Alias, Revoke, Epoch };

    Kind kind = Kind::Challenge;
    std::string name;                     // Challenge / Enroll
    uint64_t height = 0;                  // height at which the command ran
    bool has_challenge_sig = false;
    crypto::Signature challenge_sig{};    // Enroll
    crypto::Seed seed{};                  // Enroll / Alias: new identity seed
    crypto::PublicKey key{};              // Alias: existing key; Revoke: target key
    crypto::Signature proof{};            // Alias proof / Revoke voluntary signature
    std::string label;                    // Alias
    uint64_t epoch = 0;                   // Epoch
};

struct RecordResolution {
    crypto::Digest256 record_digest{};
    uint64_t height = 0;
    std::string publisher;
    int64_t delta = 0;
    bool corroborated = false;
    double best_score = 0.0;
};

struct EpochReport {
    uint64_t epoch = 0;
    std::vector<RecordResolution> resolutions;
    std::vector<std::pair<std::string, int64_t>> deltas;  // per-publisher sums
    std::vector<std::string> promotions;
    std::vector<std::string> revocations;
};

struct PendingEvaluation {
    crypto::Digest256 record_digest{};
    uint64_t height = 0;
};

// The publishers management protocol: enrollment with directory-backed
// identity proofs, alias addition, revocation, and the evolvable reputation
// set updated once per closed epoch. Single writer; reads are const.
class Registry {
  public:
    Registry(TrustDirectory directory, ReputationPolicy policy, uint64_t nonce_seed);

    const TrustDirectory& directory() const { return directory_; }
    const ReputationPolicy& policy() const { return policy_; }
    uint64_t nonce_seed() const { return nonce_seed_; }

    Challenge issue_challenge(const std::string& applicant_name, uint64_t current_height);

    // Verified iff the directory lists the name and challenge_response signs
    // a live challenge nonce under the directory key. A cryptographically bad
    // signature over a live challenge is an error; a missing or expired
    // challenge falls back to NonVerified enrollment.
    const PublisherRecord& enroll(const std::string& name,
                                  const std::optional<crypto::Signature>& challenge_response,
                                  const crypto::Seed& seed, uint64_t current_height);

    // proof = sign(existing key, canonical_encode("update", existing_key, label))
    const PublisherRecord& update_identity(const crypto::PublicKey& existing_key,
                                           const crypto::Signature& proof,
                                           const std::string& new_alias_label,
                                           const crypto::Seed& seed);

    // sig = sign(key, canonical_encode("revoke", key)). Idempotent on an
    // already revoked publisher.
    const PublisherRecord& revoke_identity(const crypto::PublicKey& key,
                                           const crypto::Signature& sig);

    // Closes the next epoch once chain height has reached its boundary.
    // Evaluates corroboration against the chain prefix up to the boundary so
    // results are reproducible from any later chain state.
    EpochReport epoch_update(const Chain& chain);

    bool epoch_ready(const Chain& chain) const;
    uint64_t epochs_processed() const { return epochs_processed_; }

    const PublisherRecord* find_by_key(const crypto::PublicKey& key) const;
    const PublisherRecord* find_by_name(const std::string& name) const;
    std::span<const PublisherRecord> publishers() const { return publishers_; }
    std::span<const Challenge> challenges() const { return challenges_; }
    std::span<const PendingEvaluation> pending_evaluations() const { return pending_; }
    std::span<const RegistryEvent> log() const { return log_; }

    static Registry replay(TrustDirectory directory, ReputationPolicy policy,
                           uint64_t nonce_seed, std::span<const RegistryEvent> log,
                           const Chain& chain);

    // Snapshot restore used by workspace persistence.
    struct State {
        std::vector<PublisherRecord> publishers;
        std::vector<Challenge> challenges;
        std::vector<PendingEvaluation> pending;
        uint64_t epochs_processed = 0;
        uint64_t nonce_counter = 0;
    };
    State state() const;
    static Registry from_state(TrustDirectory directory, ReputationPolicy policy,
                               uint64_t nonce_seed, State state);

  private:
    PublisherRecord& record_for_key(const crypto::PublicKey& key);
    Challenge* live_challenge(const std::string& name, uint64_t current_height);
    void apply_revocation(PublisherRecord& rec);
    std::array<uint8_t, 32> next_nonce();
    void reindex();

    TrustDirectory directory_;
    ReputationPolicy policy_;
    uint64_t nonce_seed_ = 0;
    uint64_t nonce_counter_ = 0;
    uint64_t epochs_processed_ = 0;

    std::vector<PublisherRecord> publishers_;
    std::map<crypto::PublicKey, size_t> key_index_;
    std::map<std::string, size_t> name_index_;
    std::vector<Challenge> challenges_;
    std::vector<PendingEvaluation> pending_;
    std::vector<RegistryEvent> log_;
};

}  // namespace newschain
