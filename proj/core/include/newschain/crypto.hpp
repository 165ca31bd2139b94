#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "newschain/bytes.hpp"

namespace newschain::crypto {

// 32-byte SHA-256 output. Array comparison is lexicographic, which equals
// numeric order of the value read as a 256-bit big-endian integer; the PoW
// target check relies on this.
using Digest256 = std::array<uint8_t, 32>;
using PublicKey = std::array<uint8_t, 32>;
using SecretKey = std::array<uint8_t, 64>;  // libsodium ed25519 layout: seed || pk
using Signature = std::array<uint8_t, 64>;
using Seed = std::array<uint8_t, 32>;

inline constexpr Digest256 kZeroDigest{};
inline constexpr PublicKey kZeroKey{};
inline constexpr Signature kZeroSignature{};

struct KeyPair {
    PublicKey public_key{};
    SecretKey secret_key{};
};

// Length-prefixed concatenation: each field becomes (8-byte big-endian
// length || payload). Injective over field lists, so hashing the encoding
// never confuses ["AB","C"] with ["A","BC"].
Bytes canonical_encode(std::initializer_list<ByteView> fields);
Bytes canonical_encode(std::span<const Bytes> fields);

// SHA-256. Every call bumps a thread-local counter so tests can assert how
// many hash evaluations an operation performed.
Digest256 digest(ByteView data);
uint64_t digest_call_count();
void reset_digest_call_count();

// Deterministic ed25519 keypair from a 32-byte seed.
KeyPair generate_keypair(ByteView seed);

Signature sign(const SecretKey& sk, ByteView message);

// Never throws on garbage input; malformed keys or signatures verify false.
bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

std::string to_hex(ByteView data);

}  // namespace newschain::crypto
