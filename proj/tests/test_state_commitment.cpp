#include <doctest.h>

#include <stdexcept>

#include <set>
#include <string>

#include "rat/rng.hpp"
#include "rat/sha256.hpp"
#include "rat/state_commitment.hpp"

using namespace rat;

namespace {

L2State random_state(SplitMix64& rng) {
    L2State state;
    state.block_number = rng.next();
    const std::size_t leaf_count = 2 + rng.next() % 16;
    for (std::size_t i = 0; i < leaf_count; ++i) {
        std::vector<std::uint8_t> leaf(1 + rng.next() % 64);
        for (auto& byte : leaf) {
            byte = std::uint8_t(rng.next());
        }
        state.leaves.push_back(std::move(leaf));
    }
    return state;
}

}  // namespace

TEST_CASE("sha256 golden vectors") {
    CHECK(to_hex(sha256(std::string(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256(std::string("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(std::string(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // Long multi-block input.
    CHECK(to_hex(sha256(std::string(1000000, 'a'))) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("hash_pair") {
    const Digest zero{};
    SUBCASE("pinned digest of 64 zero bytes") {
        CHECK(to_hex(hash_pair(zero, zero)) ==
              "f5a5fd42d16a20302798ef6ed309979b43003d2320d9f0e8ea9831a92759fb4b");
    }
    SUBCASE("argument order matters") {
        Digest a{};
        Digest b{};
        a[0] = 1;
        b[0] = 2;
        CHECK(hash_pair(a, b) != hash_pair(b, a));
    }
    SUBCASE("deterministic") {
        CHECK(hash_pair(zero, zero) == hash_pair(zero, zero));
    }
}

TEST_CASE("commitment structure") {
    SUBCASE("two leaves: children are the leaf hashes") {
        L2State state;
        state.leaves = {{0x01}, {0x02}};
        state.block_number = 7;
        const StateCommitment c = build_commitment(state);
        CHECK(c.left == sha256(state.leaves[0]));
        CHECK(c.right == sha256(state.leaves[1]));
        CHECK(c.root == hash_pair(c.left, c.right));
        CHECK(c.block_number == 7);
    }
    SUBCASE("three leaves pad to four slots") {
        L2State state;
        state.leaves = {{0x01}, {0x02}, {0x03}};
        const StateCommitment c = build_commitment(state);
        const Digest zero{};
        CHECK(c.left == hash_pair(sha256(state.leaves[0]), sha256(state.leaves[1])));
        CHECK(c.right == hash_pair(sha256(state.leaves[2]), zero));
        CHECK(c.root == hash_pair(c.left, c.right));
    }
    SUBCASE("leaf order is binding") {
        L2State state;
        state.leaves = {{0x01}, {0x02}};
        L2State swapped;
        swapped.leaves = {{0x02}, {0x01}};
        CHECK(build_commitment(state).root != build_commitment(swapped).root);
    }
    SUBCASE("single leaf is rejected") {
        L2State state;
        state.leaves = {{0x01}};
        CHECK_THROWS_AS(build_commitment(state), std::invalid_argument);
    }
}

TEST_CASE("puzzle round trip and tamper detection") {
    SplitMix64 rng(0x9e1e7);
    for (int i = 0; i < 1000; ++i) {
        const L2State state = random_state(rng);
        const StateCommitment honest = build_commitment(state);

        // The honest children always verify against their own root.
        REQUIRE(verify_solution(honest.root, {honest.left, honest.right}));

        // Any single-bit perturbation of the solution fails.
        AttentionSolution tampered{honest.left, honest.right};
        const std::size_t bit = rng.next() % 512;
        auto& half = bit < 256 ? tampered.left : tampered.right;
        half[(bit % 256) / 8] ^= std::uint8_t(1u << (bit % 8));
        REQUIRE(!verify_solution(honest.root, tampered));

        // The honest answer never matches a fraudulent root.
        const StateCommitment corrupted = corrupt_commitment(state, rng.next());
        REQUIRE(corrupted.root != honest.root);
        REQUIRE(!verify_solution(corrupted.root, {honest.left, honest.right}));

        // A fraudulent commitment is still a well-formed tree.
        REQUIRE(verify_solution(corrupted.root, {corrupted.left, corrupted.right}));
    }
}

TEST_CASE("commitment binding: distinct states give distinct roots") {
    SplitMix64 rng(0xb17d);
    std::set<std::string> roots;
    for (int i = 0; i < 1000; ++i) {
        const L2State state = random_state(rng);
        roots.insert(to_hex(build_commitment(state).root));
    }
    CHECK(roots.size() == 1000);
}

TEST_CASE("corruption is deterministic in the seed") {
    SplitMix64 rng(0xc0de);
    const L2State state = random_state(rng);
    const StateCommitment a = corrupt_commitment(state, 1234);
    const StateCommitment b = corrupt_commitment(state, 1234);
    CHECK(a.root == b.root);
    const StateCommitment c = corrupt_commitment(state, 1235);
    CHECK((c.root != a.root));  // different seed, different corruption
}

TEST_CASE("synthetic states are reproducible") {
    const L2State a = make_synthetic_state(99, 1000);
    const L2State b = make_synthetic_state(99, 1000);
    CHECK(a.leaves == b.leaves);
    CHECK(build_commitment(a).root == build_commitment(b).root);
    const L2State c = make_synthetic_state(100, 1000);
    CHECK(build_commitment(c).root != build_commitment(a).root);
}

TEST_CASE("hex encoding is lowercase and unprefixed") {
    Digest d{};
    d[0] = 0xAB;
    d[31] = 0x0F;
    const std::string hex = to_hex(d);
    CHECK(hex.size() == 64);
    CHECK(hex.substr(0, 2) == "ab");
    CHECK(hex.substr(62, 2) == "0f");
}
