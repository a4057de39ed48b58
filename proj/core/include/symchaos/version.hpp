#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace symchaos {

inline constexpr std::string_view kVersion = "0.1.0";

// FNV-1a, used to stamp reports with a stable hash of their input bytes.
inline uint64_t fnv1a(std::string_view bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    uint64_t h = fnv1a(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace symchaos
