#pragma once

#include <cstdint>
#include <vector>

#include "rat/sha256.hpp"

namespace rat {

/// Synthetic L2 state: an ordered list of opaque leaf encodings plus the
/// block height they describe. Needs at least two leaves so the root has
/// two real children to ask about.
struct L2State {
    std::vector<std::vector<std::uint8_t>> leaves;
    std::uint64_t block_number = 0;
};

/// Merkle root of an L2 state together with the two direct children that
/// form it — the puzzle a challenged validator must reproduce.
/// Invariant: hash_pair(left, right) == root.
struct StateCommitment {
    Digest root{};
    Digest left{};
    Digest right{};
    std::uint64_t block_number = 0;
};

/// A challenged validator's answer: the two direct children of the root
/// it computed on its own.
struct AttentionSolution {
    Digest left{};
    Digest right{};
};

/// Digest of the 64-byte concatenation left || right.
Digest hash_pair(const Digest& left, const Digest& right);

/// Builds the state tree: each leaf is hashed, the level is padded with
/// the all-zero digest to the next power of two (minimum two slots), and
/// adjacent nodes are combined pairwise bottom-up. Throws
/// std::invalid_argument on fewer than two leaves.
StateCommitment build_commitment(const L2State& state);

/// Commitment over the same state with one pseudorandomly chosen leaf
/// byte flipped — a fraudulent root that is still internally consistent.
/// Deterministic in (state, seed).
StateCommitment corrupt_commitment(const L2State& state, std::uint64_t seed);

/// True iff the solution's children hash to the recorded root.
bool verify_solution(const Digest& recorded_root, const AttentionSolution& solution);

/// Seeded synthetic state for simulation: leaf_count pseudorandom 32-byte
/// leaves derived from (seed, block_number).
L2State make_synthetic_state(std::uint64_t seed, std::uint64_t block_number,
                             std::size_t leaf_count = 4);

}  // namespace rat
