#include "newschain/config.hpp"

#include <bit>
#include <cstring>

#include "newschain/bytes.hpp"
#include "newschain/errors.hpp"

namespace newschain {

void GenesisConfig::validate() const {
    if (mode == Mode::PoA && authorities.empty())
        throw Error(ErrorCode::Config, "authority mode needs at least one authority key");
    if (mode == Mode::PoW) {
        bool zero = true;
        for (uint8_t b : pow_target)
            if (b != 0) zero = false;
        if (zero) throw Error(ErrorCode::Config, "pow_target of zero admits no block");
    }
    if (max_block_records == 0)
        throw Error(ErrorCode::Config, "max_block_records must be positive");
    policy.validate();
}

crypto::Digest256 GenesisConfig::sentinel_digest() const {
    std::vector<Bytes> fields;
    fields.push_back(to_bytes(as_bytes("genesis")));
    fields.push_back({static_cast<uint8_t>(mode)});
    fields.push_back(to_bytes(be64(authorities.size())));
    for (const auto& key : authorities) fields.push_back(to_bytes(key));
    fields.push_back(to_bytes(pow_target));
    fields.push_back(to_bytes(be64(max_block_records)));

    uint64_t theta_bits = std::bit_cast<uint64_t>(policy.theta);
    fields.push_back(to_bytes(be64(theta_bits)));
    fields.push_back(to_bytes(be64(policy.window_w)));
    fields.push_back(to_bytes(be64(policy.epoch_e)));
    fields.push_back(to_bytes(be64_signed(policy.t_promote)));
    fields.push_back(to_bytes(be64_signed(policy.t_revoke)));
    fields.push_back(to_bytes(be64_signed(policy.delta_corroborated)));
    fields.push_back(to_bytes(be64_signed(policy.delta_unsupported)));
    fields.push_back(to_bytes(be64(policy.evaluation_period_p)));

    return crypto::digest(crypto::canonical_encode(fields));
}

}  // namespace newschain
