#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newschain/config.hpp"
#include "newschain/ledger.hpp"

namespace newschain::sim {

enum class Role : uint8_t { Publisher = 0, Miner = 1, Verifier = 2 };
enum class Behavior : uint8_t {
    Honest = 0,
    Tamper = 1,      // mutates a record after signing, rebuilds the root
    ForgeSig = 2,    // includes a record with a fabricated signature
    Equivocate = 3,  // proposes two conflicting blocks for the same height
    Withhold = 4,    // never proposes
    OutOfTurn = 5,   // proposes in someone else's slot
};

const char* role_name(Role r);
const char* behavior_name(Behavior b);

struct NodeSpec {
    std::string name;
    Role role = Role::Verifier;
    Behavior behavior = Behavior::Honest;
    crypto::Seed key_seed{};
};

struct LinkSpec {
    double drop_probability = 0.0;
    uint64_t delay_rounds = 1;
};

struct Publication {
    uint64_t round = 0;
    std::string publisher;
    std::string text;
};

struct Script {
    std::vector<std::string> directory;  // publishers enrolling with identity proof
    std::vector<Publication> publications;
};

// Identical configs (seed included) produce byte-identical reports.
struct SimConfig {
    uint64_t rng_seed = 0;
    uint64_t num_rounds = 0;
    std::vector<NodeSpec> nodes;
    LinkSpec link;
    GenesisConfig genesis;
    Script script;
};

struct NodeOutcome {
    std::string name;
    Role role = Role::Verifier;
    Behavior behavior = Behavior::Honest;
    uint64_t height = 0;
    crypto::Digest256 head_hash{};
};

struct SimEvent {
    uint64_t round = 0;
    std::string node;
    std::string type;
    std::string detail;
};

struct ReputationPoint {
    uint64_t epoch = 0;
    int64_t reputation = 0;
    Status status = Status::NonVerified;
};

struct SimReport {
    uint64_t rounds_executed = 0;
    bool agreement = false;
    uint64_t tampered_records_on_canonical = 0;
    std::vector<NodeOutcome> nodes;
    std::vector<PublisherRecord> registry;  // canonical honest snapshot
    std::map<std::string, std::vector<ReputationPoint>> reputation_trajectories;
    std::vector<SimEvent> events;
};

struct SimResult {
    SimReport report;
    // Final canonical chain of the first honest node, for PoT checks and
    // registry replay against the agreed history.
    std::optional<Chain> canonical_chain;
    std::vector<RegistryEvent> registry_log;
    TrustDirectory directory;
};

SimResult run_simulation(const SimConfig& config);

// Preset reproducing the framework walkthrough: two directory-verified wire
// services cross-corroborating, one echo outlet that earns promotion, one
// junk outlet that gets revoked and then tries to publish again.
SimConfig scenario_illustration();

// Flips one byte of the block line at `height` in a chain file. Destructive
// test utility backing the tamper-evidence checks.
void tamper_tool(const std::string& chain_file, uint64_t height, uint64_t byte_offset,
                 uint8_t new_byte, const std::string& out_file);

}  // namespace newschain::sim
