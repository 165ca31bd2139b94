#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace newschain {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline Bytes to_bytes(ByteView v) {
    return Bytes(v.begin(), v.end());
}

inline void append(Bytes& out, ByteView more) {
    out.insert(out.end(), more.begin(), more.end());
}

// 8-byte big-endian integer encoding, used by every length prefix and
// numeric field in the canonical wire format.
inline std::array<uint8_t, 8> be64(uint64_t v) {
    std::array<uint8_t, 8> out{};
    for (int i = 7; i >= 0; --i) {
        out[static_cast<size_t>(i)] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

inline std::array<uint8_t, 8> be64_signed(int64_t v) {
    return be64(static_cast<uint64_t>(v));
}

inline uint64_t read_be64(ByteView in) {
    if (in.size() < 8) throw std::invalid_argument("read_be64: need 8 bytes");
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
    return v;
}

std::string hex_encode(ByteView data);
Bytes hex_decode(std::string_view hex);

template <size_t N>
std::array<uint8_t, N> hex_decode_fixed(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    if (raw.size() != N)
        throw std::invalid_argument("hex value has wrong length: expected " +
                                    std::to_string(N) + " bytes, got " +
                                    std::to_string(raw.size()));
    std::array<uint8_t, N> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

}  // namespace newschain
