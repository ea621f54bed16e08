#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zcs {

/// Unsigned arbitrary-precision integer, little-endian 32-bit limbs.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v);

    bool is_zero() const { return limbs_.empty(); }
    size_t bit_length() const;
    std::optional<uint64_t> to_u64() const;
    std::string to_decimal() const;

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

    friend BigUint operator+(const BigUint& a, const BigUint& b);
    friend BigUint operator*(const BigUint& a, const BigUint& b);

    /// base^exp, or nullopt if the result would exceed max_bits bits.
    static std::optional<BigUint> pow(const BigUint& base, const BigUint& exp, size_t max_bits);

private:
    std::vector<uint32_t> limbs_;
    void trim();
    uint32_t divmod_small(uint32_t d); // in place, returns remainder
};

} // namespace zcs
