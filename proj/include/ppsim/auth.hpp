#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppsim {

// Authenticated announcement on the public classical channel.
struct PublicMessage {
    enum class Sender { Alice, Bob };

    Sender sender = Sender::Alice;
    std::string body;
    std::uint64_t tag = 0;
};

// Keyed tag of tag_bits bits (8..61): polynomial-evaluation universal
// hash over GF(2^61 - 1), truncated. Forgery probability for a
// key-ignorant adversary is at most 2^-tag_bits plus the hash collision
// term |payload|/2^61.
std::uint64_t authenticate(std::string_view payload, std::span<const std::uint8_t> key,
                           int tag_bits);

bool verify(const PublicMessage& msg, std::span<const std::uint8_t> key, int tag_bits);

// Hex decode helper for keys in config files.
std::vector<std::uint8_t> key_from_hex(std::string_view hex);

}  // namespace ppsim
