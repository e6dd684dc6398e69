#include <doctest.h>

#include "ppsim/auth.hpp"
#include "ppsim/errors.hpp"

#include "support.hpp"

using namespace ppsim;

TEST_CASE("tags are deterministic and bounded by the tag width") {
    const auto key = key_from_hex("00112233445566778899aabbccddeeff");
    const std::uint64_t tag = authenticate("ctrl basis=Z outcome=1 seq=7", key, 32);
    CHECK(tag == authenticate("ctrl basis=Z outcome=1 seq=7", key, 32));
    CHECK(tag < (1ULL << 32));
    CHECK(authenticate("x", key, 8) < (1ULL << 8));
}

TEST_CASE("untampered round trips verify") {
    const auto key = key_from_hex("deadbeefcafebabe0123456789abcdef");
    PublicMessage msg{PublicMessage::Sender::Alice, "ctrl basis=X outcome=0 seq=3", 0};
    msg.tag = authenticate(msg.body, key, 32);
    CHECK(verify(msg, key, 32));
}

TEST_CASE("a single flipped payload bit almost always changes the tag") {
    // Monte Carlo over random keys at a narrow tag to make the bound tight.
    const int tag_bits = 16;
    const int trials = 10000;
    std::mt19937_64 rng(29);
    int unchanged = 0;
    for (int k = 0; k < trials; ++k) {
        const auto key = gen::random_key(rng);
        std::string body = "ctrl basis=Z outcome=0 seq=12345";
        const std::uint64_t tag = authenticate(body, key, tag_bits);
        body[body.size() - 1] ^= 1;
        if (authenticate(body, key, tag_bits) == tag) ++unchanged;
    }
    // Expected collisions ~ trials * 2^-16 = 0.15; allow generous slack.
    CHECK(unchanged <= 5);
}

TEST_CASE("payload length is part of the tag") {
    const auto key = key_from_hex("00ff00ff00ff00ff");
    CHECK(authenticate("abc", key, 32) != authenticate(std::string("abc") + '\0', key, 32));
}

TEST_CASE("argument validation") {
    const auto key = key_from_hex("aa");
    CHECK_THROWS_AS(authenticate("x", {}, 32), DomainError);
    CHECK_THROWS_AS(authenticate("x", key, 4), DomainError);
    CHECK_THROWS_AS(key_from_hex("abc"), ConfigError);
    CHECK_THROWS_AS(key_from_hex("zz"), ConfigError);
}
