#include "newschain/registry.hpp"

#include <algorithm>

#include "newschain/errors.hpp"
#include "newschain/ledger.hpp"
#include "newschain/news.hpp"

namespace newschain {

void ReputationPolicy::validate() const {
    if (!(t_revoke < 0 && 0 < t_promote))
        throw Error(ErrorCode::Config, "policy requires t_revoke < 0 < t_promote");
    if (!(theta > 0.0 && theta <= 1.0))
        throw Error(ErrorCode::Config, "policy requires 0 < theta <= 1");
    if (epoch_e == 0) throw Error(ErrorCode::Config, "epoch_e must be positive");
}

Registry::Registry(TrustDirectory directory, ReputationPolicy policy, uint64_t nonce_seed)
    : directory_(std::move(directory)), policy_(policy), nonce_seed_(nonce_seed) {
    policy_.validate();
}

std::array<uint8_t, 32> Registry::next_nonce() {
    auto d = crypto::digest(crypto::canonical_encode(
        {as_bytes("challenge-nonce"), be64(nonce_seed_), be64(nonce_counter_)}));
    ++nonce_counter_;
    return d;
}

const PublisherRecord* Registry::find_by_key(const crypto::PublicKey& key) const {
    auto it = key_index_.find(key);
    return it == key_index_.end() ? nullptr : &publishers_[it->second];
}

const PublisherRecord* Registry::find_by_name(const std::string& name) const {
    auto it = name_index_.find(name);
    return it == name_index_.end() ? nullptr : &publishers_[it->second];
}

PublisherRecord& Registry::record_for_key(const crypto::PublicKey& key) {
    auto it = key_index_.find(key);
    if (it == key_index_.end())
        throw Error(ErrorCode::NoSuchPublisher, "public key is not enrolled");
    return publishers_[it->second];
}

Challenge* Registry::live_challenge(const std::string& name, uint64_t current_height) {
    Challenge* found = nullptr;
    for (auto& ch : challenges_) {
        if (ch.applicant_name == name && !ch.consumed && current_height < ch.expires_at)
            found = &ch;  // latest live challenge wins
    }
    return found;
}

Challenge Registry::issue_challenge(const std::string& applicant_name, uint64_t current_height) {
    if (applicant_name.empty())
        throw Error(ErrorCode::InvalidArgument, "applicant name must be nonempty");
    Challenge ch;
    ch.applicant_name = applicant_name;
    ch.nonce = next_nonce();
    ch.issued_at = current_height;
    ch.expires_at = current_height + policy_.epoch_e;
    challenges_.push_back(ch);

    RegistryEvent ev;
    ev.kind = RegistryEvent::Kind::Challenge;
    ev.name = applicant_name;
    ev.height = current_height;
    log_.push_back(std::move(ev));
    return ch;
}

const PublisherRecord& Registry::enroll(const std::string& name,
                                        const std::optional<crypto::Signature>& challenge_response,
                                        const crypto::Seed& seed, uint64_t current_height) {
    if (name.empty()) throw Error(ErrorCode::InvalidArgument, "publisher name must be nonempty");
    if (name_index_.count(name))
        throw Error(ErrorCode::AlreadyEnrolled, "publisher '" + name + "' is already enrolled");

    crypto::KeyPair kp = crypto::generate_keypair(seed);
    if (key_index_.count(kp.public_key))
        throw Error(ErrorCode::KeyConflict, "generated public key already belongs to a publisher");

    Status status = Status::NonVerified;
    if (challenge_response) {
        Challenge* ch = live_challenge(name, current_height);
        const crypto::PublicKey* dir_key = directory_.find(name);
        if (ch && dir_key) {
            if (!crypto::verify(*dir_key, ch->nonce, *challenge_response))
                throw Error(ErrorCode::VerificationFailed,
                            "challenge signature does not verify under the directory key");
            status = Status::Verified;
            ch->consumed = true;
        }
        // No live challenge or no directory entry: nothing to verify against,
        // fall through to NonVerified enrollment.
    }

    PublisherRecord rec;
    rec.name = name;
    rec.public_keys.push_back(kp.public_key);
    rec.status = status;
    rec.reputation = status == Status::Verified ? policy_.t_promote : 0;
    rec.enrolled_at = current_height;
    rec.last_epoch_evaluated = current_height / policy_.epoch_e;

    size_t idx = publishers_.size();
    publishers_.push_back(std::move(rec));
    key_index_[kp.public_key] = idx;
    name_index_[name] = idx;

    RegistryEvent ev;
    ev.kind = RegistryEvent::Kind::Enroll;
    ev.name = name;
    ev.height = current_height;
    ev.seed = seed;
    if (challenge_response) {
        ev.has_challenge_sig = true;
        ev.challenge_sig = *challenge_response;
    }
    log_.push_back(std::move(ev));
    return publishers_[idx];
}

const PublisherRecord& Registry::update_identity(const crypto::PublicKey& existing_key,
                                                 const crypto::Signature& proof,
                                                 const std::string& new_alias_label,
                                                 const crypto::Seed& seed) {
    PublisherRecord& rec = record_for_key(existing_key);
    if (rec.status == Status::Revoked)
        throw Error(ErrorCode::Revoked, "publisher '" + rec.name + "' is revoked");

    Bytes msg = crypto::canonical_encode(
        {as_bytes("update"), existing_key, as_bytes(new_alias_label)});
    if (!crypto::verify(existing_key, msg, proof))
        throw Error(ErrorCode::VerificationFailed, "alias proof does not verify");

    crypto::KeyPair kp = crypto::generate_keypair(seed);
    if (key_index_.count(kp.public_key))
        throw Error(ErrorCode::KeyConflict, "generated public key already belongs to a publisher");

    size_t idx = key_index_[existing_key];
    publishers_[idx].public_keys.push_back(kp.public_key);
    key_index_[kp.public_key] = idx;

    RegistryEvent ev;
    ev.kind = RegistryEvent::Kind::Alias;
    ev.key = existing_key;
    ev.proof = proof;
    ev.label = new_alias_label;
    ev.seed = seed;
    log_.push_back(std::move(ev));
    return publishers_[idx];
}

void Registry::apply_revocation(PublisherRecord& rec) {
    rec.status = Status::Revoked;
}

const PublisherRecord& Registry::revoke_identity(const crypto::PublicKey& key,
                                                 const crypto::Signature& sig) {
    PublisherRecord& rec = record_for_key(key);
    if (rec.status == Status::Revoked) return rec;  // idempotent

    Bytes msg = crypto::canonical_encode({as_bytes("revoke"), key});
    if (!crypto::verify(key, msg, sig))
        throw Error(ErrorCode::VerificationFailed, "revocation signature does not verify");

    apply_revocation(rec);

    RegistryEvent ev;
    ev.kind = RegistryEvent::Kind::Revoke;
    ev.key = key;
    ev.proof = sig;
    log_.push_back(std::move(ev));
    return rec;
}

bool Registry::epoch_ready(const Chain& chain) const {
    return chain.height() >= (epochs_processed_ + 1) * policy_.epoch_e;
}

EpochReport Registry::epoch_update(const Chain& chain) {
    const uint64_t epoch = epochs_processed_ + 1;
    const uint64_t boundary = epoch * policy_.epoch_e;
    if (chain.height() < boundary)
        throw Error(ErrorCode::InvalidArgument,
                    "epoch " + std::to_string(epoch) + " closes at height " +
                        std::to_string(boundary) + ", chain is at " +
                        std::to_string(chain.height()));

    // Queue the records finalized in the closed epoch behind any deferrals
    // from earlier epochs.
    const uint64_t first = (epoch - 1) * policy_.epoch_e + 1;
    for (uint64_t h = first; h <= boundary; ++h) {
        const Block& b = chain.block_at(h);
        for (const NewsRecord& r : b.records) pending_.push_back({r.digest(), h});
    }

    EpochReport report;
    report.epoch = epoch;
    std::map<size_t, int64_t> deltas;  // publisher index -> sum

    std::vector<PendingEvaluation> still_pending;
    for (const PendingEvaluation& pe : pending_) {
        auto loc = chain.find_record(pe.record_digest);
        if (!loc) continue;  // dropped from the canonical history
        const NewsRecord& rec = chain.record_at(*loc);
        auto ki = key_index_.find(rec.publisher_key);
        if (ki == key_index_.end()) continue;
        PublisherRecord& pub = publishers_[ki->second];
        if (pub.status == Status::Revoked) continue;  // absorbing; nothing to score

        CorroborationResult cr = corroborate(rec, chain, *this, policy_, boundary);
        int64_t delta = 0;
        if (cr.corroborated) {
            delta = policy_.delta_corroborated;
        } else if (cr.window_open) {
            still_pending.push_back(pe);  // verdict deferred to a later epoch
            continue;
        } else {
            delta = policy_.delta_unsupported;
        }
        pub.reputation += delta;
        pub.last_epoch_evaluated = epoch;
        deltas[ki->second] += delta;
        report.resolutions.push_back({pe.record_digest, pe.height, pub.name, delta,
                                      cr.corroborated,
                                      cr.best_match ? cr.best_match->score : 0.0});
    }
    pending_ = std::move(still_pending);

    for (const auto& [idx, delta] : deltas)
        report.deltas.emplace_back(publishers_[idx].name, delta);

    // Status transitions, in enrollment order.
    for (PublisherRecord& pub : publishers_) {
        if (pub.status == Status::Revoked) continue;
        if (pub.status == Status::NonVerified && pub.reputation >= policy_.t_promote) {
            pub.status = Status::Verified;
            report.promotions.push_back(pub.name);
            continue;
        }
        if (pub.reputation <= policy_.t_revoke) {
            apply_revocation(pub);
            report.revocations.push_back(pub.name);
            continue;
        }
        const uint64_t enrolled_epoch = pub.enrolled_at / policy_.epoch_e;
        if (pub.status == Status::NonVerified && epoch >= enrolled_epoch &&
            epoch - enrolled_epoch >= policy_.evaluation_period_p &&
            pub.reputation < policy_.t_promote) {
            apply_revocation(pub);
            report.revocations.push_back(pub.name);
        }
    }

    epochs_processed_ = epoch;

    RegistryEvent ev;
    ev.kind = RegistryEvent::Kind::Epoch;
    ev.epoch = epoch;
    log_.push_back(std::move(ev));
    return report;
}

Registry Registry::replay(TrustDirectory directory, ReputationPolicy policy,
                          uint64_t nonce_seed, std::span<const RegistryEvent> log,
                          const Chain& chain) {
    Registry reg(std::move(directory), policy, nonce_seed);
    for (const RegistryEvent& ev : log) {
        switch (ev.kind) {
            case RegistryEvent::Kind::Challenge:
                reg.issue_challenge(ev.name, ev.height);
                break;
            case RegistryEvent::Kind::Enroll: {
                std::optional<crypto::Signature> sig;
                if (ev.has_challenge_sig) sig = ev.challenge_sig;
                reg.enroll(ev.name, sig, ev.seed, ev.height);
                break;
            }
            case RegistryEvent::Kind::Alias:
                reg.update_identity(ev.key, ev.proof, ev.label, ev.seed);
                break;
            case RegistryEvent::Kind::Revoke:
                reg.revoke_identity(ev.key, ev.proof);
                break;
            case RegistryEvent::Kind::Epoch: {
                EpochReport rep = reg.epoch_update(chain);
                if (rep.epoch != ev.epoch)
                    throw Error(ErrorCode::Config, "replay epoch mismatch");
                break;
            }
        }
    }
    return reg;
}

void Registry::reindex() {
    key_index_.clear();
    name_index_.clear();
    for (size_t i = 0; i < publishers_.size(); ++i) {
        name_index_[publishers_[i].name] = i;
        for (const auto& k : publishers_[i].public_keys) key_index_[k] = i;
    }
}

Registry::State Registry::state() const {
    return {publishers_, challenges_, pending_, epochs_processed_, nonce_counter_};
}

Registry Registry::from_state(TrustDirectory directory, ReputationPolicy policy,
                              uint64_t nonce_seed, State state) {
    Registry reg(std::move(directory), policy, nonce_seed);
    reg.publishers_ = std::move(state.publishers);
    reg.challenges_ = std::move(state.challenges);
    reg.pending_ = std::move(state.pending);
    reg.epochs_processed_ = state.epochs_processed;
    reg.nonce_counter_ = state.nonce_counter;
    reg.reindex();
    return reg;
}

}  // namespace newschain
