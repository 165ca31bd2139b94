#include "newschain/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "newschain/errors.hpp"

namespace newschain::json_io {

namespace {

template <size_t N>
std::array<uint8_t, N> hex_field(const json& j, const char* key) {
    return hex_decode_fixed<N>(j.at(key).get<std::string>());
}

Status status_from_name(const std::string& s) {
    if (s == "NonVerified") return Status::NonVerified;
    if (s == "Verified") return Status::Verified;
    if (s == "Revoked") return Status::Revoked;
    throw Error(ErrorCode::InvalidArgument, "unknown publisher status '" + s + "'");
}

Mode mode_from_name(const std::string& s) {
    if (s == "PoA") return Mode::PoA;
    if (s == "PoW") return Mode::PoW;
    throw Error(ErrorCode::InvalidArgument, "unknown consensus mode '" + s + "'");
}

sim::Role role_from_name(const std::string& s) {
    if (s == "publisher") return sim::Role::Publisher;
    if (s == "miner") return sim::Role::Miner;
    if (s == "verifier") return sim::Role::Verifier;
    throw Error(ErrorCode::InvalidArgument, "unknown node role '" + s + "'");
}

sim::Behavior behavior_from_name(const std::string& s) {
    if (s == "honest") return sim::Behavior::Honest;
    if (s == "tamper") return sim::Behavior::Tamper;
    if (s == "forge-sig") return sim::Behavior::ForgeSig;
    if (s == "equivocate") return sim::Behavior::Equivocate;
    if (s == "withhold") return sim::Behavior::Withhold;
    if (s == "out-of-turn") return sim::Behavior::OutOfTurn;
    throw Error(ErrorCode::InvalidArgument, "unknown node behavior '" + s + "'");
}

}  // namespace

json to_json(const NewsRecord& r) {
    return json{{"publisher_name", r.publisher_name},
                {"publisher_status", status_name(r.publisher_status)},
                {"publisher_key", crypto::to_hex(r.publisher_key)},
                {"timestamp", r.timestamp},
                {"news_text", r.news_text},
                {"signature", crypto::to_hex(r.signature)}};
}

NewsRecord news_record_from_json(const json& j) {
    NewsRecord r;
    r.publisher_name = j.at("publisher_name").get<std::string>();
    r.publisher_status = status_from_name(j.at("publisher_status").get<std::string>());
    r.publisher_key = hex_field<32>(j, "publisher_key");
    r.timestamp = j.at("timestamp").get<int64_t>();
    r.news_text = j.at("news_text").get<std::string>();
    r.signature = hex_field<64>(j, "signature");
    return r;
}

json to_json(const BlockHeader& h) {
    return json{{"height", h.height},
                {"prev_hash", crypto::to_hex(h.prev_hash)},
                {"merkle_root", crypto::to_hex(h.merkle_root)},
                {"timestamp", h.timestamp},
                {"nonce", h.nonce},
                {"producer_key", crypto::to_hex(h.producer_key)},
                {"producer_sig", crypto::to_hex(h.producer_sig)}};
}

BlockHeader block_header_from_json(const json& j) {
    BlockHeader h;
    h.height = j.at("height").get<uint64_t>();
    h.prev_hash = hex_field<32>(j, "prev_hash");
    h.merkle_root = hex_field<32>(j, "merkle_root");
    h.timestamp = j.at("timestamp").get<int64_t>();
    h.nonce = j.at("nonce").get<uint64_t>();
    h.producer_key = hex_field<32>(j, "producer_key");
    h.producer_sig = hex_field<64>(j, "producer_sig");
    return h;
}

json to_json(const Block& b) {
    json j = to_json(b.header);
    json records = json::array();
    for (const NewsRecord& r : b.records) records.push_back(to_json(r));
    j["records"] = std::move(records);
    return j;
}

Block block_from_json(const json& j) {
    Block b;
    b.header = block_header_from_json(j);
    for (const json& rj : j.at("records")) b.records.push_back(news_record_from_json(rj));
    return b;
}

json to_json(const PublisherRecord& p) {
    json keys = json::array();
    for (const auto& k : p.public_keys) keys.push_back(crypto::to_hex(k));
    return json{{"name", p.name},
                {"public_keys", std::move(keys)},
                {"status", status_name(p.status)},
                {"reputation", p.reputation},
                {"enrolled_at", p.enrolled_at},
                {"last_epoch_evaluated", p.last_epoch_evaluated}};
}

PublisherRecord publisher_from_json(const json& j) {
    PublisherRecord p;
    p.name = j.at("name").get<std::string>();
    for (const json& kj : j.at("public_keys"))
        p.public_keys.push_back(hex_decode_fixed<32>(kj.get<std::string>()));
    p.status = status_from_name(j.at("status").get<std::string>());
    p.reputation = j.at("reputation").get<int64_t>();
    p.enrolled_at = j.at("enrolled_at").get<uint64_t>();
    p.last_epoch_evaluated = j.at("last_epoch_evaluated").get<uint64_t>();
    return p;
}

json to_json(const Challenge& c) {
    return json{{"applicant_name", c.applicant_name},
                {"nonce", crypto::to_hex(c.nonce)},
                {"issued_at", c.issued_at},
                {"expires_at", c.expires_at},
                {"consumed", c.consumed}};
}

Challenge challenge_from_json(const json& j) {
    Challenge c;
    c.applicant_name = j.at("applicant_name").get<std::string>();
    c.nonce = hex_field<32>(j, "nonce");
    c.issued_at = j.at("issued_at").get<uint64_t>();
    c.expires_at = j.at("expires_at").get<uint64_t>();
    c.consumed = j.at("consumed").get<bool>();
    return c;
}

json to_json(const ReputationPolicy& p) {
    return json{{"theta", p.theta},
                {"window_w", p.window_w},
                {"epoch_e", p.epoch_e},
                {"t_promote", p.t_promote},
                {"t_revoke", p.t_revoke},
                {"delta_corroborated", p.delta_corroborated},
                {"delta_unsupported", p.delta_unsupported},
                {"evaluation_period_p", p.evaluation_period_p}};
}

// Absent fields keep their defaults so hand-written configs stay short.
ReputationPolicy policy_from_json(const json& j) {
    ReputationPolicy p;
    p.theta = j.value("theta", p.theta);
    p.window_w = j.value("window_w", p.window_w);
    p.epoch_e = j.value("epoch_e", p.epoch_e);
    p.t_promote = j.value("t_promote", p.t_promote);
    p.t_revoke = j.value("t_revoke", p.t_revoke);
    p.delta_corroborated = j.value("delta_corroborated", p.delta_corroborated);
    p.delta_unsupported = j.value("delta_unsupported", p.delta_unsupported);
    p.evaluation_period_p = j.value("evaluation_period_p", p.evaluation_period_p);
    return p;
}

json to_json(const GenesisConfig& g) {
    json authorities = json::array();
    for (const auto& k : g.authorities) authorities.push_back(crypto::to_hex(k));
    return json{{"mode", mode_name(g.mode)},
                {"authorities", std::move(authorities)},
                {"pow_target", crypto::to_hex(g.pow_target)},
                {"max_block_records", g.max_block_records},
                {"policy", to_json(g.policy)}};
}

GenesisConfig genesis_from_json(const json& j) {
    GenesisConfig g;
    g.mode = mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("authorities"))
        for (const json& kj : j.at("authorities"))
            g.authorities.push_back(hex_decode_fixed<32>(kj.get<std::string>()));
    if (j.contains("pow_target")) g.pow_target = hex_field<32>(j, "pow_target");
    g.max_block_records = j.value("max_block_records", g.max_block_records);
    if (j.contains("policy")) g.policy = policy_from_json(j.at("policy"));
    return g;
}

json to_json(const TrustDirectory& d) {
    json j = json::object();
    for (const auto& [name, key] : d.entries) j[name] = crypto::to_hex(key);
    return j;
}

TrustDirectory directory_from_json(const json& j) {
    TrustDirectory d;
    for (auto it = j.begin(); it != j.end(); ++it)
        d.entries[it.key()] = hex_decode_fixed<32>(it.value().get<std::string>());
    return d;
}

json to_json(const merkle::MerkleProof& p) {
    json path = json::array();
    for (const merkle::ProofStep& s : p.path)
        path.push_back(json{{"sibling", crypto::to_hex(s.sibling)},
                            {"side", s.side == merkle::Side::Left ? "left" : "right"}});
    return json{{"leaf_index", p.leaf_index}, {"path", std::move(path)}};
}

merkle::MerkleProof merkle_proof_from_json(const json& j) {
    merkle::MerkleProof p;
    p.leaf_index = j.at("leaf_index").get<uint64_t>();
    for (const json& sj : j.at("path")) {
        merkle::ProofStep step;
        step.sibling = hex_field<32>(sj, "sibling");
        std::string side = sj.at("side").get<std::string>();
        if (side == "left")
            step.side = merkle::Side::Left;
        else if (side == "right")
            step.side = merkle::Side::Right;
        else
            throw Error(ErrorCode::InvalidArgument, "proof side must be left or right");
        p.path.push_back(step);
    }
    return p;
}

json to_json(const PoTCertificate& c) {
    return json{{"record_digest", crypto::to_hex(c.record_digest)},
                {"block_height", c.block_height},
                {"merkle_proof", to_json(c.merkle_proof)},
                {"header", to_json(c.header)}};
}

PoTCertificate pot_certificate_from_json(const json& j) {
    PoTCertificate c;
    c.record_digest = hex_field<32>(j, "record_digest");
    c.block_height = j.at("block_height").get<uint64_t>();
    c.merkle_proof = merkle_proof_from_json(j.at("merkle_proof"));
    c.header = block_header_from_json(j.at("header"));
    return c;
}

json to_json(const RegistryEvent& e) {
    switch (e.kind) {
        case RegistryEvent::Kind::Challenge:
            return json{{"kind", "challenge"}, {"name", e.name}, {"height", e.height}};
        case RegistryEvent::Kind::Enroll: {
            json j{{"kind", "enroll"},
                   {"name", e.name},
                   {"height", e.height},
                   {"seed", crypto::to_hex(e.seed)}};
            if (e.has_challenge_sig) j["challenge_sig"] = crypto::to_hex(e.challenge_sig);
            return j;
        }
        case RegistryEvent::Kind::Alias:
            return json{{"kind", "alias"},
                        {"key", crypto::to_hex(e.key)},
                        {"proof", crypto::to_hex(e.proof)},
                        {"label", e.label},
                        {"seed", crypto::to_hex(e.seed)}};
        case RegistryEvent::Kind::Revoke:
            return json{{"kind", "revoke"},
                        {"key", crypto::to_hex(e.key)},
                        {"proof", crypto::to_hex(e.proof)}};
        case RegistryEvent::Kind::Epoch:
            return json{{"kind", "epoch"}, {"epoch", e.epoch}};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown registry event kind");
}

RegistryEvent registry_event_from_json(const json& j) {
    RegistryEvent e;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "challenge") {
        e.kind = RegistryEvent::Kind::Challenge;
        e.name = j.at("name").get<std::string>();
        e.height = j.at("height").get<uint64_t>();
    } else if (kind == "enroll") {
        e.kind = RegistryEvent::Kind::Enroll;
        e.name = j.at("name").get<std::string>();
        e.height = j.at("height").get<uint64_t>();
        e.seed = hex_field<32>(j, "seed");
        if (j.contains("challenge_sig")) {
            e.has_challenge_sig = true;
            e.challenge_sig = hex_field<64>(j, "challenge_sig");
        }
    } else if (kind == "alias") {
        e.kind = RegistryEvent::Kind::Alias;
        e.key = hex_field<32>(j, "key");
        e.proof = hex_field<64>(j, "proof");
        e.label = j.at("label").get<std::string>();
        e.seed = hex_field<32>(j, "seed");
    } else if (kind == "revoke") {
        e.kind = RegistryEvent::Kind::Revoke;
        e.key = hex_field<32>(j, "key");
        e.proof = hex_field<64>(j, "proof");
    } else if (kind == "epoch") {
        e.kind = RegistryEvent::Kind::Epoch;
        e.epoch = j.at("epoch").get<uint64_t>();
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown registry event kind '" + kind + "'");
    }
    return e;
}

json to_json(const ChainVerifyReport& r) {
    json j{{"ok", r.ok}};
    if (!r.ok) {
        j["height"] = r.height;
        j["fault"] = chain_fault_name(r.fault);
    }
    return j;
}

json to_json(const EpochReport& r) {
    json resolutions = json::array();
    for (const RecordResolution& res : r.resolutions)
        resolutions.push_back(json{{"record_digest", crypto::to_hex(res.record_digest)},
                                   {"height", res.height},
                                   {"publisher", res.publisher},
                                   {"delta", res.delta},
                                   {"corroborated", res.corroborated},
                                   {"best_score", res.best_score}});
    json deltas = json::object();
    for (const auto& [name, delta] : r.deltas) deltas[name] = delta;
    return json{{"epoch", r.epoch},
                {"resolutions", std::move(resolutions)},
                {"deltas", std::move(deltas)},
                {"promotions", r.promotions},
                {"revocations", r.revocations}};
}

json to_json(const sim::SimConfig& c) {
    json nodes = json::array();
    for (const sim::NodeSpec& n : c.nodes)
        nodes.push_back(json{{"name", n.name},
                             {"role", sim::role_name(n.role)},
                             {"behavior", sim::behavior_name(n.behavior)},
                             {"key_seed", crypto::to_hex(n.key_seed)}});
    json pubs = json::array();
    for (const sim::Publication& p : c.script.publications)
        pubs.push_back(json{{"round", p.round}, {"publisher", p.publisher}, {"text", p.text}});
    return json{{"rng_seed", c.rng_seed},
                {"num_rounds", c.num_rounds},
                {"nodes", std::move(nodes)},
                {"link", json{{"drop_probability", c.link.drop_probability},
                              {"delay_rounds", c.link.delay_rounds}}},
                {"genesis", to_json(c.genesis)},
                {"script", json{{"directory", c.script.directory},
                                {"publications", std::move(pubs)}}}};
}

sim::SimConfig sim_config_from_json(const json& j) {
    sim::SimConfig c;
    c.rng_seed = j.at("rng_seed").get<uint64_t>();
    c.num_rounds = j.at("num_rounds").get<uint64_t>();
    for (const json& nj : j.at("nodes")) {
        sim::NodeSpec n;
        n.name = nj.at("name").get<std::string>();
        n.role = role_from_name(nj.at("role").get<std::string>());
        n.behavior = behavior_from_name(nj.at("behavior").get<std::string>());
        n.key_seed = hex_field<32>(nj, "key_seed");
        c.nodes.push_back(std::move(n));
    }
    const json& lj = j.at("link");
    c.link.drop_probability = lj.at("drop_probability").get<double>();
    c.link.delay_rounds = lj.at("delay_rounds").get<uint64_t>();
    c.genesis = genesis_from_json(j.at("genesis"));
    const json& sj = j.at("script");
    c.script.directory = sj.at("directory").get<std::vector<std::string>>();
    for (const json& pj : sj.at("publications")) {
        sim::Publication p;
        p.round = pj.at("round").get<uint64_t>();
        p.publisher = pj.at("publisher").get<std::string>();
        p.text = pj.at("text").get<std::string>();
        c.script.publications.push_back(std::move(p));
    }
    return c;
}

json to_json(const sim::SimReport& r) {
    json nodes = json::array();
    for (const sim::NodeOutcome& n : r.nodes)
        nodes.push_back(json{{"name", n.name},
                             {"role", sim::role_name(n.role)},
                             {"behavior", sim::behavior_name(n.behavior)},
                             {"height", n.height},
                             {"head_hash", crypto::to_hex(n.head_hash)}});
    json registry = json::array();
    for (const PublisherRecord& p : r.registry) registry.push_back(to_json(p));
    json trajectories = json::object();
    for (const auto& [name, points] : r.reputation_trajectories) {
        json arr = json::array();
        for (const sim::ReputationPoint& pt : points)
            arr.push_back(json{{"epoch", pt.epoch},
                               {"reputation", pt.reputation},
                               {"status", status_name(pt.status)}});
        trajectories[name] = std::move(arr);
    }
    json events = json::array();
    for (const sim::SimEvent& e : r.events)
        events.push_back(json{{"round", e.round},
                              {"node", e.node},
                              {"type", e.type},
                              {"detail", e.detail}});
    return json{{"rounds_executed", r.rounds_executed},
                {"agreement", r.agreement},
                {"tampered_records_on_canonical", r.tampered_records_on_canonical},
                {"nodes", std::move(nodes)},
                {"registry", std::move(registry)},
                {"reputation_trajectories", std::move(trajectories)},
                {"events", std::move(events)}};
}

void write_chain_file(const std::string& path, const std::vector<Block>& blocks) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    for (const Block& b : blocks) out << to_json(b).dump() << '\n';
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

void append_chain_file(const std::string& path, const Block& block) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for appending");
    out << to_json(block).dump() << '\n';
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

ChainFileResult read_chain_file(const std::string& path, const GenesisConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");

    ChainFileResult result;
    std::string line;
    uint64_t height = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            result.blocks.push_back(block_from_json(json::parse(line)));
        } catch (const std::exception&) {
            result.report = {false, height, ChainFault::Encoding};
            return result;
        }
        ++height;
    }
    result.report = verify_blocks(result.blocks, config);
    return result;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace newschain::json_io
