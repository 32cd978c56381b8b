#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace exsim {

using Digest256 = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 (FIPS 180-4). Kept in-repo so transcript verification
/// has no external dependencies; checked against the NIST test vectors.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, std::size_t len);
    void update(const std::vector<std::uint8_t>& bytes) { update(bytes.data(), bytes.size()); }
    void update(const std::string& s) { update(s.data(), s.size()); }
    Digest256 finish();

    static Digest256 hash(const void* data, std::size_t len) {
        Sha256 h;
        h.update(data, len);
        return h.finish();
    }
    static Digest256 hash(const std::string& s) { return hash(s.data(), s.size()); }
    static Digest256 hash(const std::vector<std::uint8_t>& v) { return hash(v.data(), v.size()); }

private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint64_t bit_count_;
    std::uint8_t buffer_[64];
    std::size_t buffer_len_;
};

std::string to_hex(const Digest256& d);
bool from_hex(const std::string& hex, Digest256& out);

} // namespace exsim
