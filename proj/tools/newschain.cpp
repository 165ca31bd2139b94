// Operator CLI: workspace-backed commands over the ledger, registry, and
// simulator. Every stdout payload is JSON; failures print {"error", "rule"?}
// to stderr and exit nonzero (0 means the command's verdict is positive).
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "newschain/consensus.hpp"
#include "newschain/errors.hpp"
#include "newschain/json_io.hpp"
#include "newschain/ledger.hpp"
#include "newschain/news.hpp"
#include "newschain/registry.hpp"
#include "newschain/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace newschain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // domain error or negative verdict
constexpr int kExitUsage = 2;
constexpr int kExitLocked = 3;

void print_json(const json& j) { std::cout << j.dump() << "\n"; }

[[noreturn]] void fail(const std::string& message, int rule = 0, int exit_code = kExitFailure) {
    json err{{"error", message}};
    if (rule != 0) err["rule"] = rule;
    std::cerr << err.dump() << "\n";
    std::exit(exit_code);
}

struct Workspace {
    fs::path dir;
    int lock_fd = -1;

    fs::path genesis_file() const { return dir / "genesis.json"; }
    fs::path chain_file() const { return dir / "chain.jsonl"; }
    fs::path registry_file() const { return dir / "registry.json"; }
    fs::path directory_file() const { return dir / "trust_directory.json"; }
    fs::path pending_file() const { return dir / "pending.jsonl"; }
    fs::path keys_dir() const { return dir / "keys"; }
    fs::path lock_file() const { return dir / ".lock"; }

    bool initialized() const { return fs::exists(genesis_file()); }

    // One command per workspace at a time.
    void lock() {
        lock_fd = ::open(lock_file().c_str(), O_CREAT | O_RDWR, 0644);
        if (lock_fd < 0) fail("cannot open workspace lock file");
        if (::flock(lock_fd, LOCK_EX | LOCK_NB) != 0)
            fail("workspace is locked by another newschain process", 0, kExitLocked);
    }

    void require_initialized() const {
        if (!initialized())
            fail("workspace '" + dir.string() + "' is not initialized (run init first)");
    }

    GenesisConfig load_genesis() const {
        auto g = json_io::genesis_from_json(
            json::parse(json_io::read_text_file(genesis_file().string())));
        g.validate();
        return g;
    }

    TrustDirectory load_directory() const {
        return json_io::directory_from_json(
            json::parse(json_io::read_text_file(directory_file().string())));
    }

    // Loading verifies the whole file; a tampered chain refuses to load for
    // every command except verify-chain, which reports instead.
    Chain load_chain(const GenesisConfig& genesis) const {
        auto result = json_io::read_chain_file(chain_file().string(), genesis);
        if (!result.report.ok)
            fail("chain file fails verification at height " +
                 std::to_string(result.report.height) + " (" +
                 chain_fault_name(result.report.fault) + ")");
        Chain chain(genesis);
        for (size_t h = 1; h < result.blocks.size(); ++h)
            chain.append_block(result.blocks[h], nullptr);
        return chain;
    }

    Registry load_registry(const GenesisConfig& genesis) const {
        json j = json::parse(json_io::read_text_file(registry_file().string()));
        Registry::State state;
        state.epochs_processed = j.at("epochs_processed").get<uint64_t>();
        state.nonce_counter = j.at("nonce_counter").get<uint64_t>();
        for (const json& pj : j.at("publishers"))
            state.publishers.push_back(json_io::publisher_from_json(pj));
        for (const json& cj : j.at("challenges"))
            state.challenges.push_back(json_io::challenge_from_json(cj));
        for (const json& ej : j.at("pending"))
            state.pending.push_back(
                {hex_decode_fixed<32>(ej.at("record_digest").get<std::string>()),
                 ej.at("height").get<uint64_t>()});
        return Registry::from_state(load_directory(), genesis.policy, 0, std::move(state));
    }

    // The on-disk log is the full command history; the in-memory log holds
    // only this invocation's commands, so saving appends.
    void save_registry(const Registry& reg) const {
        json old_log = json::array();
        if (fs::exists(registry_file())) {
            json prev = json::parse(json_io::read_text_file(registry_file().string()));
            if (prev.contains("log")) old_log = prev.at("log");
        }
        for (const RegistryEvent& e : reg.log()) old_log.push_back(json_io::to_json(e));

        Registry::State state = reg.state();
        json publishers = json::array();
        for (const auto& p : state.publishers) publishers.push_back(json_io::to_json(p));
        json challenges = json::array();
        for (const auto& c : state.challenges) challenges.push_back(json_io::to_json(c));
        json pending = json::array();
        for (const auto& pe : state.pending)
            pending.push_back(json{{"record_digest", crypto::to_hex(pe.record_digest)},
                                   {"height", pe.height}});
        json j{{"epochs_processed", state.epochs_processed},
               {"nonce_counter", state.nonce_counter},
               {"publishers", std::move(publishers)},
               {"challenges", std::move(challenges)},
               {"pending", std::move(pending)},
               {"log", std::move(old_log)}};
        json_io::write_text_file(registry_file().string(), j.dump(2) + "\n");
    }

    std::vector<NewsRecord> load_pending() const {
        std::vector<NewsRecord> out;
        if (!fs::exists(pending_file())) return out;
        std::string content = json_io::read_text_file(pending_file().string());
        size_t pos = 0;
        while (pos < content.size()) {
            size_t nl = content.find('\n', pos);
            if (nl == std::string::npos) nl = content.size();
            std::string line = content.substr(pos, nl - pos);
            pos = nl + 1;
            if (line.empty()) continue;
            out.push_back(json_io::news_record_from_json(json::parse(line)));
        }
        return out;
    }

    void save_pending(const std::vector<NewsRecord>& records) const {
        std::string content;
        for (const NewsRecord& r : records) content += json_io::to_json(r).dump() + "\n";
        json_io::write_text_file(pending_file().string(), content);
    }
};

crypto::Seed parse_seed(const std::string& hex) {
    return hex_decode_fixed<32>(hex);
}

struct KeyFile {
    crypto::KeyPair pair;
    crypto::Seed seed{};
};

KeyFile load_key_file(const std::string& path) {
    json j = json::parse(json_io::read_text_file(path));
    KeyFile kf;
    kf.seed = hex_decode_fixed<32>(j.at("seed").get<std::string>());
    kf.pair = crypto::generate_keypair(kf.seed);
    auto stated = hex_decode_fixed<32>(j.at("public_key").get<std::string>());
    if (stated != kf.pair.public_key)
        throw Error(ErrorCode::InvalidArgument,
                    "key file public key does not match its seed");
    return kf;
}

// ---- subcommand handlers ----

int cmd_init(Workspace& ws, const std::string& genesis_path,
             const std::string& directory_path) {
    fs::create_directories(ws.dir);
    ws.lock();
    if (ws.initialized()) fail("workspace '" + ws.dir.string() + "' is already initialized");

    GenesisConfig genesis =
        json_io::genesis_from_json(json::parse(json_io::read_text_file(genesis_path)));
    genesis.validate();

    TrustDirectory directory;
    if (!directory_path.empty())
        directory = json_io::directory_from_json(
            json::parse(json_io::read_text_file(directory_path)));

    json_io::write_text_file(ws.genesis_file().string(),
                             json_io::to_json(genesis).dump(2) + "\n");
    json_io::write_text_file(ws.directory_file().string(),
                             json_io::to_json(directory).dump(2) + "\n");
    Block genesis_blk = genesis_block(genesis);
    json_io::write_chain_file(ws.chain_file().string(), {genesis_blk});
    json_io::write_text_file(ws.pending_file().string(), "");
    fs::create_directories(ws.keys_dir());
    Registry fresh(directory, genesis.policy, 0);
    ws.save_registry(fresh);

    print_json(json{{"workspace", ws.dir.string()},
                    {"mode", mode_name(genesis.mode)},
                    {"genesis_hash", crypto::to_hex(genesis_blk.header.hash())}});
    return kExitOk;
}

int cmd_keygen(const std::string& seed_hex, const std::string& out_path) {
    crypto::Seed seed = parse_seed(seed_hex);
    crypto::KeyPair kp = crypto::generate_keypair(seed);
    json j{{"public_key", crypto::to_hex(kp.public_key)},
           {"secret_key", crypto::to_hex(kp.secret_key)},
           {"seed", crypto::to_hex(seed)}};
    json_io::write_text_file(out_path, j.dump(2) + "\n");
    print_json(json{{"public_key", crypto::to_hex(kp.public_key)}, {"out", out_path}});
    return kExitOk;
}

int cmd_challenge(Workspace& ws, const std::string& name) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Chain chain = ws.load_chain(genesis);
    Registry reg = ws.load_registry(genesis);
    Challenge ch = reg.issue_challenge(name, chain.height());
    ws.save_registry(reg);
    print_json(json_io::to_json(ch));
    return kExitOk;
}

int cmd_enroll(Workspace& ws, const std::string& name, const std::string& sig_hex,
               const std::string& seed_hex) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Chain chain = ws.load_chain(genesis);
    Registry reg = ws.load_registry(genesis);
    std::optional<crypto::Signature> sig;
    if (!sig_hex.empty()) sig = hex_decode_fixed<64>(sig_hex);
    const PublisherRecord& rec = reg.enroll(name, sig, parse_seed(seed_hex), chain.height());
    ws.save_registry(reg);
    print_json(json_io::to_json(rec));
    return kExitOk;
}

int cmd_alias(Workspace& ws, const std::string& key_hex, const std::string& label,
              const std::string& proof_hex, const std::string& seed_hex) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Registry reg = ws.load_registry(genesis);
    const PublisherRecord& rec =
        reg.update_identity(hex_decode_fixed<32>(key_hex), hex_decode_fixed<64>(proof_hex),
                            label, parse_seed(seed_hex));
    ws.save_registry(reg);
    print_json(json_io::to_json(rec));
    return kExitOk;
}

int cmd_revoke(Workspace& ws, const std::string& key_hex, const std::string& sig_hex) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Registry reg = ws.load_registry(genesis);
    const PublisherRecord& rec =
        reg.revoke_identity(hex_decode_fixed<32>(key_hex), hex_decode_fixed<64>(sig_hex));
    ws.save_registry(reg);
    print_json(json_io::to_json(rec));
    return kExitOk;
}

int cmd_publish(Workspace& ws, const std::string& key_file, const std::string& text,
                std::optional<int64_t> timestamp) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Registry reg = ws.load_registry(genesis);
    KeyFile kf = load_key_file(key_file);
    const PublisherRecord* pub = reg.find_by_key(kf.pair.public_key);
    if (!pub) fail("key is not enrolled as a publisher");

    int64_t ts = timestamp ? *timestamp : static_cast<int64_t>(std::time(nullptr));
    NewsRecord rec = create_news(kf.pair, *pub, text, ts);

    auto pending = ws.load_pending();
    for (const NewsRecord& existing : pending)
        if (existing.digest() == rec.digest()) fail("identical record is already pending");
    pending.push_back(rec);
    ws.save_pending(pending);
    json out = json_io::to_json(rec);
    out["digest"] = crypto::to_hex(rec.digest());  // handed to `pot` later
    print_json(out);
    return kExitOk;
}

int cmd_mine(Workspace& ws, bool pow_flag, const std::string& key_file,
             std::optional<int64_t> timestamp, uint64_t max_iterations, uint64_t slot_skip) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    if (pow_flag && genesis.mode != Mode::PoW)
        fail("--pow requested but the workspace genesis is in PoA mode");
    Chain chain = ws.load_chain(genesis);
    Registry reg = ws.load_registry(genesis);

    auto pending = ws.load_pending();
    std::vector<NewsRecord> candidates;
    json skipped = json::array();
    for (const NewsRecord& r : pending) {
        if (chain.find_record(r.digest())) {
            skipped.push_back(json{{"digest", crypto::to_hex(r.digest())},
                                   {"reason", "already on chain"}});
            continue;
        }
        NewsValidation v = validate_news(r, reg);
        if (!v.ok) {
            skipped.push_back(
                json{{"digest", crypto::to_hex(r.digest())}, {"reason", v.reason}});
            continue;
        }
        candidates.push_back(r);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const NewsRecord& a, const NewsRecord& b) {
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  return a.digest() < b.digest();
              });
    if (candidates.size() > genesis.max_block_records)
        candidates.resize(genesis.max_block_records);

    const BlockHeader& parent = chain.head().header;
    Block block;
    block.records = candidates;
    block.header.height = parent.height + 1;
    block.header.prev_hash = parent.hash();
    block.header.timestamp = timestamp ? *timestamp : parent.timestamp + 1;
    block.header.merkle_root = block.records.empty()
                                   ? crypto::kZeroDigest
                                   : merkle::merkle_root(block.record_digests());
    if (genesis.mode == Mode::PoA) {
        if (key_file.empty()) fail("PoA mining needs --key-file with the producer key");
        KeyFile kf = load_key_file(key_file);
        block.header.producer_key = kf.pair.public_key;
        block.header.producer_sig = crypto::sign(kf.pair.secret_key, block.header.preimage());
    } else {
        auto nonce = pow_mine(block.header.prev_hash, block.record_digests(),
                              genesis.pow_target, max_iterations);
        if (!nonce)
            fail("puzzle search exhausted after " + std::to_string(max_iterations) +
                 " iterations");
        block.header.nonce = *nonce;
    }

    Verdict verdict = validate_block(block, parent, reg, genesis, slot_skip);
    if (!verdict.ok) fail(verdict.reason, verdict.rule);
    chain.append_block(block, nullptr);
    json_io::append_chain_file(ws.chain_file().string(), block);

    json epochs = json::array();
    while (reg.epoch_ready(chain)) epochs.push_back(json_io::to_json(reg.epoch_update(chain)));
    ws.save_registry(reg);

    std::vector<NewsRecord> leftovers;
    for (const NewsRecord& r : pending)
        if (!chain.find_record(r.digest())) leftovers.push_back(r);
    ws.save_pending(leftovers);

    print_json(json{{"block", json_io::to_json(block)},
                    {"included", block.records.size()},
                    {"skipped", std::move(skipped)},
                    {"epochs", std::move(epochs)}});
    return kExitOk;
}

int cmd_verify_chain(Workspace& ws) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    auto result = json_io::read_chain_file(ws.chain_file().string(), genesis);
    print_json(json_io::to_json(result.report));
    return result.report.ok ? kExitOk : kExitFailure;
}

int cmd_pot(Workspace& ws, const std::string& digest_hex, const std::string& out_path) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Chain chain = ws.load_chain(genesis);
    PoTCertificate cert = proof_of_truthfulness(chain, hex_decode_fixed<32>(digest_hex));
    json j = json_io::to_json(cert);
    if (!out_path.empty()) json_io::write_text_file(out_path, j.dump(2) + "\n");
    print_json(j);
    return kExitOk;
}

int cmd_pot_verify(Workspace& ws, const std::string& cert_path) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Chain chain = ws.load_chain(genesis);
    PoTCertificate cert =
        json_io::pot_certificate_from_json(json::parse(json_io::read_text_file(cert_path)));
    std::set<crypto::Digest256> trusted;
    for (const Block& b : chain.blocks()) trusted.insert(b.header.hash());
    bool valid = verify_truthfulness(cert, cert.record_digest, trusted);
    print_json(json{{"valid", valid}});
    return valid ? kExitOk : kExitFailure;
}

int cmd_reputation(Workspace& ws, const std::string& publisher) {
    ws.lock();
    ws.require_initialized();
    GenesisConfig genesis = ws.load_genesis();
    Registry reg = ws.load_registry(genesis);
    if (!publisher.empty()) {
        const PublisherRecord* rec = reg.find_by_name(publisher);
        if (!rec) fail("no publisher named '" + publisher + "'");
        print_json(json_io::to_json(*rec));
    } else {
        json arr = json::array();
        for (const PublisherRecord& p : reg.publishers()) arr.push_back(json_io::to_json(p));
        print_json(arr);
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& report_path,
                 bool scenario, const std::string& write_scenario_path) {
    if (!write_scenario_path.empty()) {
        json_io::write_text_file(write_scenario_path,
                                 json_io::to_json(sim::scenario_illustration()).dump(2) + "\n");
        print_json(json{{"scenario_config", write_scenario_path}});
        return kExitOk;
    }
    sim::SimConfig cfg;
    if (scenario) {
        cfg = sim::scenario_illustration();
    } else {
        if (config_path.empty()) fail("simulate needs --config, --scenario, or --write-scenario");
        cfg = json_io::sim_config_from_json(
            json::parse(json_io::read_text_file(config_path)));
    }
    sim::SimResult result = sim::run_simulation(cfg);
    if (!report_path.empty())
        json_io::write_text_file(report_path,
                                 json_io::to_json(result.report).dump(2) + "\n");
    bool ok = result.report.agreement && result.report.tampered_records_on_canonical == 0;
    print_json(json{{"agreement", result.report.agreement},
                    {"tampered_records_on_canonical",
                     result.report.tampered_records_on_canonical},
                    {"rounds_executed", result.report.rounds_executed},
                    {"report", report_path}});
    return ok ? kExitOk : kExitFailure;
}

int cmd_tamper(Workspace& ws, uint64_t height, uint64_t offset, const std::string& byte_hex,
               const std::string& out_path) {
    ws.lock();
    ws.require_initialized();
    Bytes b = hex_decode(byte_hex);
    if (b.size() != 1) fail("--byte takes exactly two hex digits");
    std::string out = out_path.empty() ? ws.chain_file().string() : out_path;
    sim::tamper_tool(ws.chain_file().string(), height, offset, b[0], out);
    print_json(json{{"tampered", json{{"height", height}, {"offset", offset}}},
                    {"file", out}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"append-only news ledger with publisher reputation"};
    app.require_subcommand(1);

    std::string workspace_flag;
    app.add_option("--workspace", workspace_flag,
                   "workspace directory (overrides NEWSCHAIN_WORKSPACE)");

    // init
    auto* init = app.add_subcommand("init", "create a workspace from a genesis config");
    std::string init_genesis, init_directory;
    init->add_option("--genesis", init_genesis, "genesis config JSON file")->required();
    init->add_option("--directory", init_directory, "trust directory JSON file");

    // keygen
    auto* keygen = app.add_subcommand("keygen", "derive a keypair from a 32-byte seed");
    std::string keygen_seed, keygen_out;
    keygen->add_option("--seed", keygen_seed, "32-byte hex seed")->required();
    keygen->add_option("--out", keygen_out, "output key file")->required();

    // challenge
    auto* challenge = app.add_subcommand("challenge", "issue an enrollment challenge");
    std::string challenge_name;
    challenge->add_option("--name", challenge_name, "applicant name")->required();

    // enroll
    auto* enroll = app.add_subcommand("enroll", "enroll a publisher");
    std::string enroll_name, enroll_sig, enroll_seed;
    enroll->add_option("--name", enroll_name, "publisher name")->required();
    enroll->add_option("--challenge-sig", enroll_sig,
                       "directory-key signature over the live challenge nonce (hex)");
    enroll->add_option("--seed", enroll_seed, "32-byte hex seed for the new identity")
        ->required();

    // alias
    auto* alias = app.add_subcommand("alias", "add an alias key to a publisher");
    std::string alias_key, alias_label, alias_proof, alias_seed;
    alias->add_option("--key", alias_key, "existing public key (hex)")->required();
    alias->add_option("--label", alias_label, "alias label")->required();
    alias->add_option("--proof", alias_proof, "signature by the existing key (hex)")
        ->required();
    alias->add_option("--seed", alias_seed, "32-byte hex seed for the alias key")->required();

    // revoke
    auto* revoke = app.add_subcommand("revoke", "voluntarily revoke a publisher identity");
    std::string revoke_key, revoke_sig;
    revoke->add_option("--key", revoke_key, "public key (hex)")->required();
    revoke->add_option("--sig", revoke_sig, "revocation signature (hex)")->required();

    // publish
    auto* publish = app.add_subcommand("publish", "sign a news record into the pending pool");
    std::string publish_key_file, publish_text;
    std::optional<int64_t> publish_ts;
    publish->add_option("--key-file", publish_key_file, "publisher key file")->required();
    publish->add_option("--text", publish_text, "news text")->required();
    publish->add_option("--timestamp", publish_ts, "record timestamp (default: wall clock)");

    // mine
    auto* mine = app.add_subcommand("mine", "produce the next block from the pending pool");
    bool mine_pow = false;
    std::string mine_key_file;
    std::optional<int64_t> mine_ts;
    uint64_t mine_max_iter = 1ull << 22;
    uint64_t mine_slot_skip = 0;
    mine->add_flag("--pow", mine_pow, "require puzzle mining (workspace must be in PoW mode)");
    mine->add_option("--key-file", mine_key_file, "producer key file (required under PoA)");
    mine->add_option("--timestamp", mine_ts,
                     "block timestamp (default: parent timestamp + 1)");
    mine->add_option("--max-iterations", mine_max_iter, "puzzle search bound");
    mine->add_option("--slot-skip", mine_slot_skip,
                     "accept producers up to this many slots past the in-turn authority");

    // verify-chain
    auto* verify = app.add_subcommand("verify-chain", "verify the workspace chain file");

    // pot
    auto* pot = app.add_subcommand("pot", "produce a proof-of-truthfulness certificate");
    std::string pot_digest, pot_out;
    pot->add_option("--digest", pot_digest, "record digest (hex)")->required();
    pot->add_option("--out", pot_out, "also write the certificate to this file");

    // pot-verify
    auto* pot_verify = app.add_subcommand("pot-verify", "check a certificate against the chain");
    std::string pot_verify_cert;
    pot_verify->add_option("--cert", pot_verify_cert, "certificate JSON file")->required();

    // reputation
    auto* reputation = app.add_subcommand("reputation", "print publisher scores and status");
    std::string reputation_publisher;
    reputation->add_option("--publisher", reputation_publisher, "limit to one publisher");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a deterministic network simulation");
    std::string sim_config, sim_report, sim_write_scenario;
    bool sim_scenario = false;
    simulate->add_option("--config", sim_config, "simulation config JSON file");
    simulate->add_option("--report", sim_report, "write the report JSON here");
    simulate->add_flag("--scenario", sim_scenario, "run the built-in walkthrough scenario");
    simulate->add_option("--write-scenario", sim_write_scenario,
                         "write the built-in scenario config to this file and exit");

    // tamper
    auto* tamper = app.add_subcommand(
        "tamper", "DESTRUCTIVE test utility: flip one byte of a block line");
    uint64_t tamper_height = 0, tamper_offset = 0;
    std::string tamper_byte, tamper_out;
    tamper->add_option("--height", tamper_height, "block height (line number)")->required();
    tamper->add_option("--offset", tamper_offset, "byte offset within the line")->required();
    tamper->add_option("--byte", tamper_byte, "replacement byte (two hex digits)")->required();
    tamper->add_option("--out", tamper_out, "write the mutated file here instead of in place");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitUsage;
    }

    Workspace ws;
    if (!workspace_flag.empty()) {
        ws.dir = workspace_flag;
    } else if (const char* env = std::getenv("NEWSCHAIN_WORKSPACE"); env && *env) {
        ws.dir = env;
    } else {
        ws.dir = ".";
    }

    try {
        if (init->parsed()) return cmd_init(ws, init_genesis, init_directory);
        if (keygen->parsed()) return cmd_keygen(keygen_seed, keygen_out);
        if (challenge->parsed()) return cmd_challenge(ws, challenge_name);
        if (enroll->parsed()) return cmd_enroll(ws, enroll_name, enroll_sig, enroll_seed);
        if (alias->parsed())
            return cmd_alias(ws, alias_key, alias_label, alias_proof, alias_seed);
        if (revoke->parsed()) return cmd_revoke(ws, revoke_key, revoke_sig);
        if (publish->parsed()) return cmd_publish(ws, publish_key_file, publish_text, publish_ts);
        if (mine->parsed())
            return cmd_mine(ws, mine_pow, mine_key_file, mine_ts, mine_max_iter,
                            mine_slot_skip);
        if (verify->parsed()) return cmd_verify_chain(ws);
        if (pot->parsed()) return cmd_pot(ws, pot_digest, pot_out);
        if (pot_verify->parsed()) return cmd_pot_verify(ws, pot_verify_cert);
        if (reputation->parsed()) return cmd_reputation(ws, reputation_publisher);
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_report, sim_scenario, sim_write_scenario);
        if (tamper->parsed())
            return cmd_tamper(ws, tamper_height, tamper_offset, tamper_byte, tamper_out);
        fail("no subcommand given", 0, kExitUsage);
    } catch (const Error& e) {
        json err{{"error", e.what()}};
        if (e.rule() != 0) err["rule"] = e.rule();
        std::cerr << err.dump() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitFailure;
    }
}
