#include "newschain/crypto.hpp"

#include <sodium.h>

#include <mutex>

#include "newschain/errors.hpp"

namespace newschain {

namespace {

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) throw Error(ErrorCode::Config, "libsodium init failed");
    });
}

thread_local uint64_t g_digest_calls = 0;

}  // namespace

std::string hex_encode(ByteView data) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0x0f]);
    }
    return out;
}

Bytes hex_decode(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0)
        throw std::invalid_argument("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(hex[2 * i]);
        int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("hex string has non-hex character");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

namespace crypto {

Bytes canonical_encode(std::initializer_list<ByteView> fields) {
    size_t total = 0;
    for (const auto& f : fields) total += 8 + f.size();
    Bytes out;
    out.reserve(total);
    for (const auto& f : fields) {
        auto len = be64(f.size());
        append(out, len);
        append(out, f);
    }
    return out;
}

Bytes canonical_encode(std::span<const Bytes> fields) {
    Bytes out;
    for (const auto& f : fields) {
        auto len = be64(f.size());
        append(out, len);
        append(out, f);
    }
    return out;
}

Digest256 digest(ByteView data) {
    ensure_sodium();
    ++g_digest_calls;
    Digest256 out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

uint64_t digest_call_count() { return g_digest_calls; }
void reset_digest_call_count() { g_digest_calls = 0; }

KeyPair generate_keypair(ByteView seed) {
    ensure_sodium();
    if (seed.size() != crypto_sign_SEEDBYTES)
        throw Error(ErrorCode::InvalidArgument,
                    "keypair seed must be exactly 32 bytes, got " +
                        std::to_string(seed.size()));
    KeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed.data());
    return kp;
}

Signature sign(const SecretKey& sk, ByteView message) {
    ensure_sodium();
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk.data());
    return sig;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(),
                                       pk.data()) == 0;
}

std::string to_hex(ByteView data) { return hex_encode(data); }

}  // namespace crypto
}  // namespace newschain
