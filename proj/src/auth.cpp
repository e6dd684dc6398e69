#include "ppsim/auth.hpp"

#include "ppsim/errors.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

namespace {

constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

std::uint64_t mod_p(unsigned __int128 x) { return static_cast<std::uint64_t>(x % kPrime); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    return mod_p(static_cast<unsigned __int128>(a) * b);
}

// Derive the evaluation point and the blinding offset from the key bytes.
void derive_key_material(std::span<const std::uint8_t> key, std::uint64_t& point,
                         std::uint64_t& offset) {
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    for (std::uint8_t byte : key) {
        state ^= byte;
        splitmix64(state);
    }
    point = splitmix64(state) % (kPrime - 1) + 1;
    offset = splitmix64(state) % kPrime;
}

}  // namespace

std::uint64_t authenticate(std::string_view payload, std::span<const std::uint8_t> key,
                           int tag_bits) {
    if (key.empty()) throw DomainError("authentication key must be nonempty");
    if (tag_bits < 8 || tag_bits > 61) throw DomainError("tag_bits must be in [8, 61]");

    std::uint64_t point = 0, offset = 0;
    derive_key_material(key, point, offset);

    // Pack 7 bytes per coefficient so every coefficient is below the prime;
    // a final length coefficient separates payloads of different sizes.
    std::uint64_t acc = 0;
    std::size_t pos = 0;
    while (pos < payload.size()) {
        std::uint64_t chunk = 0;
        for (int b = 0; b < 7 && pos < payload.size(); ++b, ++pos) {
            chunk |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(payload[pos])) << (8 * b);
        }
        acc = mod_p(static_cast<unsigned __int128>(mul_mod(acc, point)) + chunk + 1);
    }
    acc = mod_p(static_cast<unsigned __int128>(mul_mod(acc, point)) + payload.size());
    acc = mod_p(static_cast<unsigned __int128>(acc) + offset);

    return tag_bits >= 61 ? acc : (acc & ((1ULL << tag_bits) - 1));
}

bool verify(const PublicMessage& msg, std::span<const std::uint8_t> key, int tag_bits) {
    return authenticate(msg.body, key, tag_bits) == msg.tag;
}

std::vector<std::uint8_t> key_from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ConfigError("invalid hex digit in key");
    };
    if (hex.size() % 2 != 0) throw ConfigError("hex key must have even length");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t k = 0; k < hex.size(); k += 2) {
        out.push_back(static_cast<std::uint8_t>(nibble(hex[k]) * 16 + nibble(hex[k + 1])));
    }
    return out;
}

}  // namespace ppsim
