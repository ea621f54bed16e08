#include "zcs/bigint.hpp"

#include <algorithm>

namespace zcs {

BigUint::BigUint(uint64_t v) {
    if (v) limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    uint32_t top = limbs_.back();
    size_t bits = (limbs_.size() - 1) * 32;
    while (top) { ++bits; top >>= 1; }
    return bits;
}

std::optional<uint64_t> BigUint::to_u64() const {
    if (limbs_.size() > 2) return std::nullopt;
    uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

uint32_t BigUint::divmod_small(uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<uint32_t>(rem);
}

std::string BigUint::to_decimal() const {
    if (limbs_.empty()) return "0";
    BigUint tmp = *this;
    std::vector<uint32_t> chunks;
    while (!tmp.is_zero())
        chunks.push_back(tmp.divmod_small(1000000000u));
    std::string out = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() <=> b.limbs_.size();
    for (size_t i = a.limbs_.size(); i-- > 0;)
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
}

BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint out;
    const auto& x = a.limbs_;
    const auto& y = b.limbs_;
    size_t n = std::max(x.size(), y.size());
    out.limbs_.resize(n, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t s = carry;
        if (i < x.size()) s += x[i];
        if (i < y.size()) s += y[i];
        out.limbs_[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) out.limbs_.push_back(static_cast<uint32_t>(carry));
    return out;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t cur = out.limbs_[i + j] +
                           static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
            out.limbs_[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.limbs_.size();
        while (carry) {
            uint64_t cur = out.limbs_[k] + carry;
            out.limbs_[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

std::optional<BigUint> BigUint::pow(const BigUint& base, const BigUint& exp, size_t max_bits) {
    if (exp.is_zero()) return BigUint(1);
    if (base.is_zero()) return BigUint(0);
    if (base == BigUint(1)) return BigUint(1);
    // base >= 2: the result has at least `exp` bits
    auto e = exp.to_u64();
    if (!e || *e > max_bits || *e * base.bit_length() > max_bits + 64)
        return std::nullopt;
    BigUint acc(1), sq = base;
    uint64_t rem = *e;
    while (rem) {
        if (rem & 1) {
            acc = acc * sq;
            if (acc.bit_length() > max_bits) return std::nullopt;
        }
        rem >>= 1;
        if (rem) {
            sq = sq * sq;
            if (sq.bit_length() > max_bits) return std::nullopt;
        }
    }
    return acc;
}

} // namespace zcs
