// bit_index.hpp
// n-bit binary index vectors. Bit 1 is the leftmost (most significant) digit,
// so the concatenation j = j1 j2 is plain string concatenation.

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace qsep {

inline constexpr int max_qubits = 16;

class BitIndex {
public:
    BitIndex(int n, std::uint32_t value) : n_(n), value_(value) {
        if (n < 1 || n > max_qubits)
            throw ArgumentError("BitIndex: qubit count must be in [1, 16], got " + std::to_string(n));
        if (value >> n != 0)
            throw ArgumentError("BitIndex: value " + std::to_string(value) + " does not fit in " +
                                std::to_string(n) + " bits");
    }

    static BitIndex zeros(int n) { return BitIndex(n, 0); }
    static BitIndex ones(int n) { return BitIndex(n, mask(n)); }

    // Parses a string of '0'/'1' characters, leftmost = bit 1.
    static BitIndex parse(std::string_view bits) {
        if (bits.empty() || bits.size() > static_cast<std::size_t>(max_qubits))
            throw ArgumentError("BitIndex: bit string must have 1..16 digits");
        std::uint32_t v = 0;
        for (char ch : bits) {
            if (ch != '0' && ch != '1')
                throw ArgumentError("BitIndex: invalid digit '" + std::string(1, ch) + "'");
            v = (v << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        return BitIndex(static_cast<int>(bits.size()), v);
    }

    int size() const noexcept { return n_; }
    std::uint32_t value() const noexcept { return value_; }

    // Digit of qubit q, 1-based from the left.
    int bit(int q) const {
        if (q < 1 || q > n_) throw ArgumentError("BitIndex: qubit position out of range");
        return static_cast<int>((value_ >> (n_ - q)) & 1u);
    }

    BitIndex complement() const { return BitIndex(n_, value_ ^ mask(n_)); }
    int parity() const noexcept { return std::popcount(value_) & 1; }
    int weight() const noexcept { return std::popcount(value_); }

    // Binary scalar product j . k (number of shared ones, not reduced mod 2).
    int dot(const BitIndex& other) const {
        same_length(other);
        return std::popcount(value_ & other.value_);
    }

    BitIndex operator^(const BitIndex& other) const {
        same_length(other);
        return BitIndex(n_, value_ ^ other.value_);
    }

    BitIndex concat(const BitIndex& tail) const {
        return BitIndex(n_ + tail.n_, (value_ << tail.n_) | tail.value_);
    }

    // Splits into (first `cut` bits, remaining bits).
    std::pair<BitIndex, BitIndex> split(int cut) const {
        if (cut < 1 || cut >= n_) throw ArgumentError("BitIndex: cut must be in [1, n)");
        const int tail = n_ - cut;
        return {BitIndex(cut, value_ >> tail), BitIndex(tail, value_ & mask(tail))};
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int q = 1; q <= n_; ++q)
            if (bit(q)) s[static_cast<std::size_t>(q - 1)] = '1';
        return s;
    }

    friend bool operator==(const BitIndex&, const BitIndex&) = default;

private:
    static std::uint32_t mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

    void same_length(const BitIndex& other) const {
        if (other.n_ != n_) throw ArgumentError("BitIndex: length mismatch");
    }

    int n_;
    std::uint32_t value_;
};

} // namespace qsep
