#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rat {

/// 256-bit digest, the unit of all commitments and beacon values.
using Digest = std::array<std::uint8_t, 32>;

/// Identifier of the digest algorithm, recorded in reports so committed
/// roots can be recomputed externally.
inline constexpr const char* kHashAlgorithm = "sha256";

// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const std::uint8_t* data, std::size_t len);
    Digest finish();

private:
    void compress(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint8_t buffer_[64];
    std::size_t buffered_;
    std::uint64_t total_bytes_;
};

Digest sha256(const std::uint8_t* data, std::size_t len);
Digest sha256(const std::vector<std::uint8_t>& data);
Digest sha256(const std::string& data);

/// Lowercase hex, no prefix; the encoding used in logs and reports.
std::string to_hex(const Digest& digest);

}  // namespace rat
