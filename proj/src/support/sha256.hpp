#pragma once

#include <cstdint>
#include <string>

namespace heights {

// Streaming SHA-256. Used for cache keys over canonical request strings, so
// the only requirements are determinism and collision resistance; there is no
// secret data involved.
class Sha256 {
   public:
    Sha256();
    void update(const void* data, size_t len);
    void update(const std::string& s) { update(s.data(), s.size()); }
    // Finalizes and returns lowercase hex. The object must not be reused.
    std::string hex_digest();

    static std::string of(const std::string& s);

   private:
    void process_block(const uint8_t* block);
    uint32_t state_[8];
    uint64_t bit_count_ = 0;
    uint8_t buffer_[64];
    size_t buffer_len_ = 0;
    bool finalized_ = false;
};

}  // namespace heights
