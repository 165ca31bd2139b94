#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "newschain/config.hpp"
#include "newschain/ledger.hpp"
#include "newschain/registry.hpp"
#include "newschain/sim.hpp"

// JSON schemas for every file format and CLI payload. All binary values are
// lowercase hex without prefix; object keys serialize in alphabetical order,
// so equal values always produce equal bytes.
namespace newschain::json_io {

using json = nlohmann::json;

json to_json(const NewsRecord& r);
NewsRecord news_record_from_json(const json& j);

json to_json(const BlockHeader& h);
BlockHeader block_header_from_json(const json& j);

json to_json(const Block& b);
Block block_from_json(const json& j);

json to_json(const PublisherRecord& p);
PublisherRecord publisher_from_json(const json& j);

json to_json(const Challenge& c);
Challenge challenge_from_json(const json& j);

json to_json(const ReputationPolicy& p);
ReputationPolicy policy_from_json(const json& j);

json to_json(const GenesisConfig& g);
GenesisConfig genesis_from_json(const json& j);

json to_json(const TrustDirectory& d);
TrustDirectory directory_from_json(const json& j);

json to_json(const merkle::MerkleProof& p);
merkle::MerkleProof merkle_proof_from_json(const json& j);

json to_json(const PoTCertificate& c);
PoTCertificate pot_certificate_from_json(const json& j);

json to_json(const RegistryEvent& e);
RegistryEvent registry_event_from_json(const json& j);

json to_json(const ChainVerifyReport& r);

json to_json(const EpochReport& r);

json to_json(const sim::SimConfig& c);
sim::SimConfig sim_config_from_json(const json& j);

json to_json(const sim::SimReport& r);

// chain.jsonl: one compact JSON block per line, line N = height N.
void write_chain_file(const std::string& path, const std::vector<Block>& blocks);
void append_chain_file(const std::string& path, const Block& block);

struct ChainFileResult {
    std::vector<Block> blocks;
    ChainVerifyReport report;  // parse/decode failures surface here
};

// Decodes and verifies in one pass: a line that fails to parse reports an
// encoding fault at that height, everything decodable goes through the same
// checks as verify_chain.
ChainFileResult read_chain_file(const std::string& path, const GenesisConfig& config);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace newschain::json_io
