#include "newschain/sim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "newschain/consensus.hpp"
#include "newschain/errors.hpp"
#include "newschain/json_io.hpp"
#include "newschain/merkle.hpp"
#include "newschain/news.hpp"
#include "newschain/registry.hpp"

namespace newschain::sim {

const char* role_name(Role r) {
    switch (r) {
        case Role::Publisher: return "publisher";
        case Role::Miner: return "miner";
        case Role::Verifier: return "verifier";
    }
    return "?";
}

const char* behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Honest: return "honest";
        case Behavior::Tamper: return "tamper";
        case Behavior::ForgeSig: return "forge-sig";
        case Behavior::Equivocate: return "equivocate";
        case Behavior::Withhold: return "withhold";
        case Behavior::OutOfTurn: return "out-of-turn";
    }
    return "?";
}

namespace {

constexpr uint64_t kPowBudgetPerRound = 4096;
constexpr size_t kMaxBranches = 8;
constexpr size_t kMaxEvents = 4000;
constexpr uint64_t kMaxSyncRange = 64;

struct Branch {
    Chain chain;
    Registry registry;
};

struct Message {
    enum class Type { Block, Record, Beacon, Request };

    uint64_t deliver_round = 0;
    size_t from = 0;
    size_t to = 0;
    uint64_t seq = 0;
    Type type = Type::Block;
    Block block;
    NewsRecord record;
    HeadRef head;
    uint64_t lo = 0, hi = 0;
};

struct SimNode {
    NodeSpec spec;
    crypto::KeyPair keys;
    std::vector<Branch> branches;
    size_t active = 0;

    std::set<crypto::Digest256> accepted;
    std::set<crypto::Digest256> rejected;
    std::map<crypto::Digest256, Block> slot_deferred;  // failed only the slot check

    std::vector<NewsRecord> mempool;
    std::set<crypto::Digest256> mempool_digests;
    std::set<crypto::Digest256> reject_logged;

    uint64_t stall_rounds = 0;
    uint64_t last_active_height = 0;
    uint64_t requests_this_round = 0;
    bool equivocated = false;
};

enum class Attach { Ignored, NoParent, SlotDeferred, Rejected, Accepted };

class Simulation {
  public:
    explicit Simulation(const SimConfig& config) : cfg_(config), rng_(config.rng_seed) {
        cfg_.genesis.validate();
        effective_delay_ = std::max<uint64_t>(1, cfg_.link.delay_rounds);
        timeout_rounds_ = effective_delay_ + 1;
        setup_nodes();
        setup_registry();
    }

    SimResult run() {
        const uint64_t drain_cap = 80 + 10 * nodes_.size();
        const uint64_t stable_needed = 2 * effective_delay_ + 3;
        uint64_t stable = 0;
        uint64_t round = 0;

        while (true) {
            const bool scripted = round < cfg_.num_rounds;
            if (!scripted && (stable >= stable_needed || round >= cfg_.num_rounds + drain_cap))
                break;

            deliver(round);
            retry_deferred(round);
            update_stalls();
            if (scripted) {
                publish_scripted(round);
                mine(round);
            }
            send_beacons(round);

            stable = honest_heads_equal() ? stable + 1 : 0;
            for (auto& n : nodes_) n.requests_this_round = 0;
            ++round;
        }
        return finalize(round);
    }

  private:
    void setup_nodes() {
        std::set<std::string> names;
        for (const NodeSpec& spec : cfg_.nodes) {
            if (!names.insert(spec.name).second)
                throw Error(ErrorCode::Config, "duplicate node name '" + spec.name + "'");
            SimNode n;
            n.spec = spec;
            n.keys = crypto::generate_keypair(spec.key_seed);
            nodes_.push_back(std::move(n));
        }
        if (nodes_.empty()) throw Error(ErrorCode::Config, "simulation needs at least one node");
        for (const Publication& p : cfg_.script.publications) {
            bool found = false;
            for (const SimNode& n : nodes_)
                if (n.spec.role == Role::Publisher && n.spec.name == p.publisher) found = true;
            if (!found)
                throw Error(ErrorCode::Config,
                            "publication references unknown publisher '" + p.publisher + "'");
        }
    }

    void setup_registry() {
        for (const std::string& name : cfg_.script.directory)
            directory_.entries[name] = directory_keypair(name).public_key;

        Registry base(directory_, cfg_.genesis.policy, cfg_.rng_seed);
        for (const SimNode& n : nodes_) {
            if (n.spec.role != Role::Publisher) continue;
            if (directory_.find(n.spec.name)) {
                Challenge ch = base.issue_challenge(n.spec.name, 0);
                crypto::Signature sig =
                    crypto::sign(directory_keypair(n.spec.name).secret_key, ch.nonce);
                base.enroll(n.spec.name, sig, n.spec.key_seed, 0);
            } else {
                base.enroll(n.spec.name, std::nullopt, n.spec.key_seed, 0);
            }
        }
        base_registry_.emplace(std::move(base));

        for (SimNode& n : nodes_) {
            n.branches.push_back(Branch{Chain(cfg_.genesis), *base_registry_});
            n.active = 0;
        }
    }

    static crypto::KeyPair directory_keypair(const std::string& name) {
        crypto::Digest256 seed = crypto::digest(
            crypto::canonical_encode({as_bytes("directory-identity"), as_bytes(name)}));
        return crypto::generate_keypair(seed);
    }

    double uniform01() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    void send(size_t from, size_t to, Message msg, uint64_t round) {
        if (from == to) return;
        if (cfg_.link.drop_probability > 0.0 && uniform01() < cfg_.link.drop_probability)
            return;
        msg.deliver_round = round + effective_delay_;
        msg.from = from;
        msg.to = to;
        msg.seq = next_seq_++;
        queue_.push_back(std::move(msg));
    }

    void broadcast(size_t from, const Message& prototype, uint64_t round) {
        for (size_t to = 0; to < nodes_.size(); ++to)
            if (to != from) send(from, to, prototype, round);
    }

    void log_event(uint64_t round, const std::string& node, const std::string& type,
                   const std::string& detail) {
        if (events_.size() < kMaxEvents) events_.push_back({round, node, type, detail});
    }

    uint64_t allowance(const SimNode& n) const {
        return cfg_.genesis.mode == Mode::PoA ? n.stall_rounds / timeout_rounds_ : 0;
    }

    // Distinguishes a block that failed only because its producer's slot has
    // not timed out locally yet; such blocks are retried as stalls accumulate.
    bool slot_only_failure(const Block& b, const Verdict& v) const {
        if (v.ok || v.rule != 6 || cfg_.genesis.mode != Mode::PoA) return false;
        bool member = false;
        for (const auto& a : cfg_.genesis.authorities)
            if (a == b.header.producer_key) member = true;
        return member &&
               crypto::verify(b.header.producer_key, b.header.preimage(), b.header.producer_sig);
    }

    Attach process_block(size_t node_idx, const Block& b, uint64_t round, bool force) {
        SimNode& n = nodes_[node_idx];
        const crypto::Digest256 hash = b.header.hash();
        if (n.accepted.count(hash)) return Attach::Ignored;
        if (!force && n.rejected.count(hash)) return Attach::Ignored;
        if (b.header.height == 0) return Attach::Ignored;

        // Attach point: extending a branch head, or forking below one.
        size_t extend_branch = n.branches.size();
        size_t fork_branch = n.branches.size();
        for (size_t i = 0; i < n.branches.size(); ++i) {
            const Chain& c = n.branches[i].chain;
            if (c.height() + 1 == b.header.height &&
                c.head().header.hash() == b.header.prev_hash) {
                extend_branch = i;
                break;
            }
            if (fork_branch == n.branches.size() && b.header.height <= c.height() &&
                c.block_at(b.header.height - 1).header.hash() == b.header.prev_hash)
                fork_branch = i;
        }

        if (extend_branch < n.branches.size()) {
            Branch& br = n.branches[extend_branch];
            if (!force) {
                Verdict v = validate_block(b, br.chain.head().header, br.registry, cfg_.genesis,
                                           allowance(n));
                if (!v.ok) return handle_reject(n, b, hash, v, round);
            }
            br.chain.append_block(b, nullptr);
            close_epochs(br);
            return finish_accept(node_idx, b, hash, round);
        }

        if (fork_branch < n.branches.size()) {
            Branch candidate = rebuild_prefix(n.branches[fork_branch], b.header.height - 1);
            if (!force) {
                Verdict v = validate_block(b, candidate.chain.head().header, candidate.registry,
                                           cfg_.genesis, allowance(n));
                if (!v.ok) return handle_reject(n, b, hash, v, round);
            }
            candidate.chain.append_block(b, nullptr);
            close_epochs(candidate);
            n.branches.push_back(std::move(candidate));
            return finish_accept(node_idx, b, hash, round);
        }

        return Attach::NoParent;
    }

    Attach handle_reject(SimNode& n, const Block& b, const crypto::Digest256& hash,
                         const Verdict& v, uint64_t round) {
        if (slot_only_failure(b, v)) {
            n.slot_deferred.emplace(hash, b);
            return Attach::SlotDeferred;
        }
        n.rejected.insert(hash);
        n.slot_deferred.erase(hash);
        log_event(round, n.spec.name, "block-rejected",
                  "height " + std::to_string(b.header.height) + " rule " +
                      std::to_string(v.rule) + ": " + v.reason);
        return Attach::Rejected;
    }

    Attach finish_accept(size_t node_idx, const Block& b, const crypto::Digest256& hash,
                         uint64_t round) {
        SimNode& n = nodes_[node_idx];
        n.accepted.insert(hash);
        n.slot_deferred.erase(hash);
        choose_active(n);
        prune_branches(n);
        Message msg;
        msg.type = Message::Type::Block;
        msg.block = b;
        broadcast(node_idx, msg, round);  // gossip relay, once per first acceptance
        return Attach::Accepted;
    }

    Branch rebuild_prefix(const Branch& source, uint64_t upto_height) {
        Branch out{Chain(cfg_.genesis), *base_registry_};
        for (uint64_t h = 1; h <= upto_height; ++h) {
            out.chain.append_block(source.chain.block_at(h), nullptr);
            close_epochs(out);
        }
        return out;
    }

    void close_epochs(Branch& br) {
        while (br.registry.epoch_ready(br.chain)) br.registry.epoch_update(br.chain);
    }

    void choose_active(SimNode& n) {
        std::vector<HeadRef> heads;
        heads.reserve(n.branches.size());
        for (const Branch& br : n.branches)
            heads.push_back({br.chain.height(), br.chain.head().header.hash()});
        HeadRef best = fork_choice(heads);
        for (size_t i = 0; i < n.branches.size(); ++i)
            if (heads[i] == best) {
                n.active = i;
                return;
            }
    }

    void prune_branches(SimNode& n) {
        if (n.branches.size() <= kMaxBranches) return;
        uint64_t best = n.branches[n.active].chain.height();
        std::vector<Branch> kept;
        size_t new_active = 0;
        for (size_t i = 0; i < n.branches.size(); ++i) {
            if (i == n.active || n.branches[i].chain.height() + 2 >= best) {
                if (i == n.active) new_active = kept.size();
                kept.push_back(std::move(n.branches[i]));
            }
        }
        n.branches = std::move(kept);
        n.active = new_active;
    }

    void deliver(uint64_t round) {
        std::vector<Message> due;
        std::vector<Message> later;
        later.reserve(queue_.size());
        for (Message& m : queue_) {
            if (m.deliver_round <= round)
                due.push_back(std::move(m));
            else
                later.push_back(std::move(m));
        }
        queue_ = std::move(later);
        std::sort(due.begin(), due.end(), [](const Message& a, const Message& b) {
            if (a.to != b.to) return a.to < b.to;
            return a.seq < b.seq;
        });

        for (const Message& m : due) {
            SimNode& n = nodes_[m.to];
            switch (m.type) {
                case Message::Type::Block:
                    process_block(m.to, m.block, round, false);
                    break;
                case Message::Type::Record:
                    if (n.mempool_digests.insert(m.record.digest()).second)
                        n.mempool.push_back(m.record);
                    break;
                case Message::Type::Beacon:
                    handle_beacon(m.to, m.from, m.head, round);
                    break;
                case Message::Type::Request:
                    handle_request(m.to, m.from, m.lo, m.hi, round);
                    break;
            }
        }
    }

    void handle_beacon(size_t to, size_t from, const HeadRef& head, uint64_t round) {
        SimNode& n = nodes_[to];
        if (n.accepted.count(head.hash) || n.rejected.count(head.hash)) return;
        if (n.requests_this_round >= 2) return;
        const uint64_t mine = n.branches[n.active].chain.height();
        Message req;
        req.type = Message::Type::Request;
        if (head.height > mine) {
            req.lo = mine + 1;
            req.hi = head.height;
        } else if (head.height == mine && head.hash != n.branches[n.active].chain.head().header.hash()) {
            req.lo = head.height;
            req.hi = head.height;
        } else {
            return;
        }
        ++n.requests_this_round;
        send(to, from, req, round);
    }

    void handle_request(size_t to, size_t from, uint64_t lo, uint64_t hi, uint64_t round) {
        const Chain& c = nodes_[to].branches[nodes_[to].active].chain;
        hi = std::min({hi, c.height(), lo + kMaxSyncRange - 1});
        for (uint64_t h = lo; h <= hi && h >= 1; ++h) {
            Message msg;
            msg.type = Message::Type::Block;
            msg.block = c.block_at(h);
            send(to, from, msg, round);
        }
    }

    void retry_deferred(uint64_t round) {
        for (size_t i = 0; i < nodes_.size(); ++i) {
            bool progress = true;
            while (progress) {
                progress = false;
                auto snapshot = nodes_[i].slot_deferred;  // retries may mutate the map
                for (const auto& [hash, block] : snapshot) {
                    Attach r = process_block(i, block, round, false);
                    if (r == Attach::Accepted) progress = true;
                }
            }
        }
    }

    void update_stalls() {
        for (SimNode& n : nodes_) {
            const uint64_t h = n.branches[n.active].chain.height();
            if (h != n.last_active_height) {
                n.last_active_height = h;
                n.stall_rounds = 0;
            } else {
                ++n.stall_rounds;
            }
        }
    }

    void publish_scripted(uint64_t round) {
        for (const Publication& p : cfg_.script.publications) {
            if (p.round != round) continue;
            for (size_t i = 0; i < nodes_.size(); ++i) {
                SimNode& n = nodes_[i];
                if (n.spec.role != Role::Publisher || n.spec.name != p.publisher) continue;
                const Registry& reg = n.branches[n.active].registry;
                const PublisherRecord* self = reg.find_by_name(n.spec.name);
                Status snap = self ? self->status : Status::NonVerified;
                if (snap == Status::Revoked) snap = Status::NonVerified;  // defiant retry

                NewsRecord rec;
                rec.publisher_name = n.spec.name;
                rec.publisher_status = snap;
                rec.publisher_key = n.keys.public_key;
                rec.timestamp = static_cast<int64_t>(round);
                rec.news_text = p.text;
                rec.signature = crypto::sign(n.keys.secret_key, rec.signing_bytes());

                if (n.mempool_digests.insert(rec.digest()).second) n.mempool.push_back(rec);
                Message msg;
                msg.type = Message::Type::Record;
                msg.record = rec;
                broadcast(i, msg, round);
                log_event(round, n.spec.name, "publish",
                          p.text.substr(0, 48) + (p.text.size() > 48 ? "..." : ""));
            }
        }
    }

    std::vector<NewsRecord> build_candidates(size_t node_idx, uint64_t round) {
        SimNode& n = nodes_[node_idx];
        const Branch& br = n.branches[n.active];
        std::vector<NewsRecord> out;
        for (const NewsRecord& r : n.mempool) {
            if (br.chain.find_record(r.digest())) continue;
            NewsValidation v = validate_news(r, br.registry);
            if (!v.ok) {
                if (n.reject_logged.insert(r.digest()).second)
                    log_event(round, n.spec.name, "record-rejected",
                              "'" + r.publisher_name + "': " + v.reason);
                continue;
            }
            out.push_back(r);
        }
        std::sort(out.begin(), out.end(), [](const NewsRecord& a, const NewsRecord& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            return a.digest() < b.digest();
        });
        if (out.size() > cfg_.genesis.max_block_records)
            out.resize(cfg_.genesis.max_block_records);
        return out;
    }

    std::optional<Block> assemble(size_t node_idx, std::vector<NewsRecord> records,
                                  uint64_t round, int64_t ts_bump) {
        SimNode& n = nodes_[node_idx];
        const Branch& br = n.branches[n.active];
        Block b;
        b.records = std::move(records);
        b.header.height = br.chain.height() + 1;
        b.header.prev_hash = br.chain.head().header.hash();
        b.header.timestamp = static_cast<int64_t>(round) + 1 + ts_bump;
        b.header.merkle_root = b.records.empty()
                                   ? crypto::kZeroDigest
                                   : merkle::merkle_root(b.record_digests());
        if (cfg_.genesis.mode == Mode::PoA) {
            b.header.nonce = 0;
            b.header.producer_key = n.keys.public_key;
            b.header.producer_sig = crypto::sign(n.keys.secret_key, b.header.preimage());
        } else {
            b.header.producer_key = crypto::kZeroKey;
            b.header.producer_sig = crypto::kZeroSignature;
            auto nonce = pow_mine(b.header.prev_hash, b.record_digests(),
                                  cfg_.genesis.pow_target, kPowBudgetPerRound);
            if (!nonce) return std::nullopt;
            b.header.nonce = *nonce;
        }
        return b;
    }

    void mine(uint64_t round) {
        for (size_t i = 0; i < nodes_.size(); ++i) {
            SimNode& n = nodes_[i];
            if (n.spec.role != Role::Miner) continue;
            if (n.spec.behavior == Behavior::Withhold) continue;

            bool eligible = true;
            if (cfg_.genesis.mode == Mode::PoA) {
                const uint64_t h = n.branches[n.active].chain.height() + 1;
                eligible = n.keys.public_key ==
                           poa_slot_authority(h + allowance(n), cfg_.genesis.authorities);
            }
            Behavior behavior = n.spec.behavior;
            if (cfg_.genesis.mode == Mode::PoW && behavior == Behavior::OutOfTurn)
                behavior = Behavior::Honest;  // no slots to violate

            if (behavior == Behavior::OutOfTurn) {
                if (eligible) behavior = Behavior::Honest;  // its own turn: nothing to abuse
                // plows ahead regardless of the slot schedule
            } else if (!eligible) {
                continue;
            }

            switch (behavior) {
                case Behavior::Honest:
                case Behavior::OutOfTurn:
                    propose_honest(i, round, behavior == Behavior::OutOfTurn);
                    break;
                case Behavior::Tamper:
                    propose_tampered(i, round);
                    break;
                case Behavior::ForgeSig:
                    propose_forged(i, round);
                    break;
                case Behavior::Equivocate:
                    propose_equivocating(i, round);
                    break;
                case Behavior::Withhold:
                    break;
            }
        }
    }

    void propose_honest(size_t i, uint64_t round, bool out_of_turn) {
        auto block = assemble(i, build_candidates(i, round), round, 0);
        if (!block) return;
        SimNode& n = nodes_[i];
        log_event(round, n.spec.name, out_of_turn ? "propose-out-of-turn" : "propose",
                  "height " + std::to_string(block->header.height) + ", " +
                      std::to_string(block->records.size()) + " records");
        if (out_of_turn) {
            // Self-applies its own ineligible block and insists on that branch.
            process_block(i, *block, round, true);
            Message msg;
            msg.type = Message::Type::Block;
            msg.block = *block;
            broadcast(i, msg, round);
        } else {
            process_block(i, *block, round, false);
        }
    }

    void propose_tampered(size_t i, uint64_t round) {
        SimNode& n = nodes_[i];
        auto records = build_candidates(i, round);
        if (records.empty()) {
            propose_honest(i, round, false);
            return;
        }
        records[0].news_text.push_back('!');  // breaks the signature, root rebuilt below
        auto block = assemble(i, std::move(records), round, 0);
        if (!block) return;
        bad_digests_.insert(block->records[0].digest());
        log_event(round, n.spec.name, "propose-tampered",
                  "height " + std::to_string(block->header.height));
        process_block(i, *block, round, true);
        Message msg;
        msg.type = Message::Type::Block;
        msg.block = *block;
        broadcast(i, msg, round);
    }

    void propose_forged(size_t i, uint64_t round) {
        SimNode& n = nodes_[i];
        const Registry& reg = n.branches[n.active].registry;
        const PublisherRecord* victim = nullptr;
        for (const PublisherRecord& p : reg.publishers())
            if (p.status == Status::Verified) {
                victim = &p;
                break;
            }
        if (!victim) {
            propose_honest(i, round, false);
            return;
        }
        NewsRecord fake;
        fake.publisher_name = victim->name;
        fake.publisher_status = victim->status;
        fake.publisher_key = victim->public_keys.front();
        fake.timestamp = static_cast<int64_t>(round);
        fake.news_text = "exclusive: fabricated claim attributed to " + victim->name;
        crypto::Digest256 junk = crypto::digest(as_bytes(fake.news_text));
        std::copy(junk.begin(), junk.end(), fake.signature.begin());
        std::copy(junk.begin(), junk.end(), fake.signature.begin() + 32);

        auto records = build_candidates(i, round);
        records.insert(records.begin(), fake);
        auto block = assemble(i, std::move(records), round, 0);
        if (!block) return;
        bad_digests_.insert(fake.digest());
        log_event(round, n.spec.name, "propose-forged",
                  "height " + std::to_string(block->header.height) + " impersonating " +
                      victim->name);
        process_block(i, *block, round, true);
        Message msg;
        msg.type = Message::Type::Block;
        msg.block = *block;
        broadcast(i, msg, round);
    }

    void propose_equivocating(size_t i, uint64_t round) {
        SimNode& n = nodes_[i];
        if (n.equivocated) {
            propose_honest(i, round, false);
            return;
        }
        auto records = build_candidates(i, round);
        auto block_a = assemble(i, records, round, 0);
        auto block_b = assemble(i, std::move(records), round, 1);  // same height, other timestamp
        if (!block_a || !block_b) return;
        n.equivocated = true;
        log_event(round, n.spec.name, "propose-equivocation",
                  "two blocks at height " + std::to_string(block_a->header.height));
        process_block(i, *block_a, round, false);
        // finish_accept already relayed block A everywhere; B goes to odd peers only.
        Message msg;
        msg.type = Message::Type::Block;
        msg.block = *block_b;
        for (size_t to = 1; to < nodes_.size(); to += 2)
            if (to != i) send(i, to, msg, round);
    }

    void send_beacons(uint64_t round) {
        for (size_t i = 0; i < nodes_.size(); ++i) {
            const Chain& c = nodes_[i].branches[nodes_[i].active].chain;
            Message msg;
            msg.type = Message::Type::Beacon;
            msg.head = {c.height(), c.head().header.hash()};
            broadcast(i, msg, round);
        }
    }

    bool honest_heads_equal() const {
        std::optional<HeadRef> first;
        for (const SimNode& n : nodes_) {
            if (n.spec.behavior != Behavior::Honest) continue;
            const Chain& c = n.branches[n.active].chain;
            HeadRef h{c.height(), c.head().header.hash()};
            if (!first)
                first = h;
            else if (!(h == *first))
                return false;
        }
        return true;
    }

    SimResult finalize(uint64_t rounds_executed) {
        SimResult result;
        result.report.rounds_executed = rounds_executed;
        result.report.agreement = honest_heads_equal();
        result.directory = directory_;

        const SimNode* canonical_node = nullptr;
        for (const SimNode& n : nodes_)
            if (n.spec.behavior == Behavior::Honest) {
                canonical_node = &n;
                break;
            }

        for (const SimNode& n : nodes_) {
            const Chain& c = n.branches[n.active].chain;
            result.report.nodes.push_back({n.spec.name, n.spec.role, n.spec.behavior,
                                           c.height(), c.head().header.hash()});
        }

        if (canonical_node) {
            const Chain& canon = canonical_node->branches[canonical_node->active].chain;
            result.canonical_chain.emplace(canon);

            uint64_t tampered = 0;
            for (const Block& b : canon.blocks())
                for (const NewsRecord& r : b.records)
                    if (bad_digests_.count(r.digest()) ||
                        !crypto::verify(r.publisher_key, r.signing_bytes(), r.signature))
                        ++tampered;
            result.report.tampered_records_on_canonical = tampered;

            // Replay the registry over the agreed history for the final
            // snapshot and the per-epoch trajectories.
            Registry replayed = *base_registry_;
            while (replayed.epoch_ready(canon)) {
                EpochReport rep = replayed.epoch_update(canon);
                for (const PublisherRecord& p : replayed.publishers())
                    result.report.reputation_trajectories[p.name].push_back(
                        {rep.epoch, p.reputation, p.status});
                for (const std::string& name : rep.promotions)
                    log_event(rounds_executed, "registry", "promotion",
                              name + " reached the promotion threshold at epoch " +
                                  std::to_string(rep.epoch));
                for (const std::string& name : rep.revocations)
                    log_event(rounds_executed, "registry", "revocation",
                              name + " revoked at epoch " + std::to_string(rep.epoch));
            }
            result.report.registry.assign(replayed.publishers().begin(),
                                          replayed.publishers().end());
            // Enrollments plus the epoch closures that fired on the agreed
            // history: replaying this log against the canonical chain
            // reproduces the final registry byte for byte.
            result.registry_log.assign(replayed.log().begin(), replayed.log().end());
        } else {
            result.registry_log.assign(base_registry_->log().begin(),
                                       base_registry_->log().end());
        }
        result.report.events = std::move(events_);
        return result;
    }

    SimConfig cfg_;
    std::mt19937_64 rng_;
    uint64_t effective_delay_ = 1;
    uint64_t timeout_rounds_ = 2;
    uint64_t next_seq_ = 0;

    std::vector<SimNode> nodes_;
    std::vector<Message> queue_;
    std::vector<SimEvent> events_;
    std::set<crypto::Digest256> bad_digests_;
    TrustDirectory directory_;
    std::optional<Registry> base_registry_;
};

}  // namespace

SimResult run_simulation(const SimConfig& config) {
    return Simulation(config).run();
}

SimConfig scenario_illustration() {
    SimConfig cfg;
    cfg.rng_seed = 1913;
    cfg.num_rounds = 36;
    cfg.link = {0.0, 1};
    cfg.genesis.mode = Mode::PoA;
    cfg.genesis.max_block_records = 64;
    cfg.genesis.policy = ReputationPolicy{};

    auto seed_for = [](const std::string& name) {
        return crypto::digest(crypto::canonical_encode({as_bytes("sim-key"), as_bytes(name)}));
    };
    auto add_node = [&](const std::string& name, Role role) {
        NodeSpec spec;
        spec.name = name;
        spec.role = role;
        spec.behavior = Behavior::Honest;
        spec.key_seed = seed_for(name);
        cfg.nodes.push_back(spec);
        return crypto::generate_keypair(spec.key_seed).public_key;
    };

    cfg.genesis.authorities.push_back(add_node("mint-1", Role::Miner));
    cfg.genesis.authorities.push_back(add_node("mint-2", Role::Miner));
    cfg.genesis.authorities.push_back(add_node("mint-3", Role::Miner));
    cfg.genesis.authorities.push_back(add_node("mint-4", Role::Miner));
    add_node("observer", Role::Verifier);
    add_node("TruthWire", Role::Publisher);
    add_node("GlobalDesk", Role::Publisher);
    add_node("EchoPress", Role::Publisher);
    add_node("NoiseDaily", Role::Publisher);

    cfg.script.directory = {"GlobalDesk", "TruthWire"};

    // Two wire services file paraphrased copies of the same story every
    // round; overlap 9 of 10 tokens keeps them above the 0.8 threshold.
    auto wire_story = [](uint64_t i, bool paraphrase) {
        std::string n = std::to_string(i);
        std::string text = "update region" + n + " crews" + n + " repair" + n + " bridge" + n +
                           " delay" + n + " traffic" + n + " route" + n + " detour" + n +
                           " notice" + n;
        text += paraphrase ? " memo" + n : " plan" + n;
        return text;
    };
    for (uint64_t r = 0; r < 30; ++r) {
        cfg.script.publications.push_back({r, "TruthWire", wire_story(r, false)});
        cfg.script.publications.push_back({r, "GlobalDesk", wire_story(r, true)});
    }
    // The echo outlet republishes the wire text verbatim for five rounds:
    // five corroborated records, exactly the promotion threshold.
    for (uint64_t r = 0; r < 5; ++r)
        cfg.script.publications.push_back({r, "EchoPress", wire_story(r, false)});
    // The junk outlet's stories share no tokens with anything else; they
    // mature uncorroborated and walk its score down to the revocation line.
    for (uint64_t r = 0; r < 3; ++r) {
        std::string n = std::to_string(r);
        cfg.script.publications.push_back(
            {r, "NoiseDaily", "zarbo" + n + " quilp" + n + " fendra" + n + " oxtal" + n +
                                  " prind" + n + " welv" + n + " jorn" + n + " asket" + n});
    }
    // One more attempt after the registry has revoked it; every miner must
    // refuse to seat this record.
    cfg.script.publications.push_back(
        {33, "NoiseDaily", "zarbo99 quilp99 fendra99 oxtal99 prind99 welv99 jorn99 asket99"});
    return cfg;
}

void tamper_tool(const std::string& chain_file, uint64_t height, uint64_t byte_offset,
                 uint8_t new_byte, const std::string& out_file) {
    std::string content = json_io::read_text_file(chain_file);
    std::vector<std::string> lines;
    std::string cur;
    for (char c : content) {
        if (c == '\n') {
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(std::move(cur));

    if (height >= lines.size())
        throw Error(ErrorCode::InvalidArgument,
                    "chain file has no block at height " + std::to_string(height));
    std::string& line = lines[height];
    if (byte_offset >= line.size())
        throw Error(ErrorCode::InvalidArgument,
                    "byte offset " + std::to_string(byte_offset) + " is past the end of the " +
                        std::to_string(line.size()) + "-byte block line");
    if (static_cast<uint8_t>(line[byte_offset]) == new_byte)
        throw Error(ErrorCode::InvalidArgument, "replacement byte equals the original");
    line[byte_offset] = static_cast<char>(new_byte);

    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    json_io::write_text_file(out_file, out);
}

}  // namespace newschain::sim
