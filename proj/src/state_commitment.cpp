#include "rat/state_commitment.hpp"

#include <stdexcept>

#include "rat/rng.hpp"

namespace rat {

namespace {

void append_u64_be(std::vector<std::uint8_t>& out, std::uint64_t value) {
    for (int i = 7; i >= 0; --i) {
        out.push_back(std::uint8_t(value >> (8 * i)));
    }
}

StateCommitment build_from_leaves(
    const std::vector<std::vector<std::uint8_t>>& leaves,
    std::uint64_t block_number) {
    std::vector<Digest> level;
    level.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        level.push_back(sha256(leaf));
    }

    std::size_t slots = 2;
    while (slots < level.size()) {
        slots *= 2;
    }
    level.resize(slots, Digest{});  // pad with the zero digest

    while (level.size() > 2) {
        std::vector<Digest> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            next.push_back(hash_pair(level[i], level[i + 1]));
        }
        level = std::move(next);
    }

    StateCommitment commitment;
    commitment.left = level[0];
    commitment.right = level[1];
    commitment.root = hash_pair(level[0], level[1]);
    commitment.block_number = block_number;
    return commitment;
}

}  // namespace

Digest hash_pair(const Digest& left, const Digest& right) {
    Sha256 h;
    h.update(left.data(), left.size());
    h.update(right.data(), right.size());
    return h.finish();
}

StateCommitment build_commitment(const L2State& state) {
    if (state.leaves.size() < 2) {
        throw std::invalid_argument("state needs at least two leaves");
    }
    return build_from_leaves(state.leaves, state.block_number);
}

StateCommitment corrupt_commitment(const L2State& state, std::uint64_t seed) {
    if (state.leaves.size() < 2) {
        throw std::invalid_argument("state needs at least two leaves");
    }
    SplitMix64 rng(seed);
    auto leaves = state.leaves;
    auto& leaf = leaves[rng.next() % leaves.size()];
    if (leaf.empty()) {
        leaf.push_back(0x01);
    } else {
        // XOR with a nonzero byte always changes the leaf.
        leaf[rng.next() % leaf.size()] ^= std::uint8_t(1 + rng.next() % 255);
    }
    return build_from_leaves(leaves, state.block_number);
}

bool verify_solution(const Digest& recorded_root,
                     const AttentionSolution& solution) {
    return hash_pair(solution.left, solution.right) == recorded_root;
}

L2State make_synthetic_state(std::uint64_t seed, std::uint64_t block_number,
                             std::size_t leaf_count) {
    L2State state;
    state.block_number = block_number;
    state.leaves.reserve(leaf_count);
    for (std::size_t i = 0; i < leaf_count; ++i) {
        std::vector<std::uint8_t> preimage;
        preimage.reserve(8 + 8 + 8 + 4);
        const char tag[4] = {'L', 'E', 'A', 'F'};
        preimage.insert(preimage.end(), tag, tag + 4);
        append_u64_be(preimage, seed);
        append_u64_be(preimage, block_number);
        append_u64_be(preimage, std::uint64_t(i));
        const Digest d = sha256(preimage);
        state.leaves.emplace_back(d.begin(), d.end());
    }
    return state;
}

}  // namespace rat
