#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace symchaos {

// Value of the sequence metric: either 0 or an exact power 2^-k, k >= 0.
// All comparisons are exact integer arithmetic; no floating point anywhere.
class Dyadic {
  public:
    static Dyadic zero() { return Dyadic(true, 0); }
    static Dyadic pow2(uint32_t neg_exponent) { return Dyadic(false, neg_exponent); }
    static Dyadic one() { return pow2(0); }

    bool is_zero() const { return zero_; }
    // Only meaningful when !is_zero().
    uint32_t exponent() const { return exp_; }

    // Strict comparison with 1/n:  2^-k < 1/n  <=>  2^k > n.
    bool less_than_inverse(uint64_t n) const {
        if (zero_) return true;
        if (exp_ >= 63) return true;  // 2^exp overflows only when it certainly exceeds n
        return (uint64_t(1) << exp_) > n;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        if (a.zero_ != b.zero_) return false;
        return a.zero_ || a.exp_ == b.exp_;
    }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        if (a.zero_) return !b.zero_;
        if (b.zero_) return false;
        return a.exp_ > b.exp_;  // larger exponent = smaller value
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a < b || a == b; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }

    std::string str() const {
        if (zero_) return "0";
        if (exp_ == 0) return "1";
        return "2^-" + std::to_string(exp_);
    }

  private:
    Dyadic(bool zero, uint32_t exp) : zero_(zero), exp_(zero ? 0 : exp) {}
    bool zero_;
    uint32_t exp_;
};

// Least word length L with 2^-L < 1/n, i.e. L = floor(log2(n)) + 1.
inline uint32_t net_length(uint64_t n) {
    uint32_t L = 1;
    while ((uint64_t(1) << L) <= n) ++L;
    return L;
}

}  // namespace symchaos
