#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ubcycle {

/// Fixed-length packed bit sequence. Bit i lives in word i/64 at position i%64.
/// Bits past size() in the last word are always zero.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t num_bits) : size_(num_bits), words_(word_count(num_bits), 0) {}

    static BitVec from_support(std::size_t num_bits, std::span<const std::size_t> support);

    static constexpr std::size_t word_count(std::size_t num_bits) { return (num_bits + 63) / 64; }

    std::size_t size() const { return size_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void clear();

    std::size_t popcount() const;
    bool any() const;
    bool none() const { return !any(); }

    /// Index of the highest set bit, or -1 when the vector is zero.
    long long highest_set() const;
    /// Index of the lowest set bit, or -1 when the vector is zero.
    long long lowest_set() const;

    std::vector<std::size_t> support() const;

    BitVec &operator^=(const BitVec &other);
    BitVec &operator&=(const BitVec &other);
    friend BitVec operator^(BitVec lhs, const BitVec &rhs) { return lhs ^= rhs; }
    friend BitVec operator&(BitVec lhs, const BitVec &rhs) { return lhs &= rhs; }
    bool operator==(const BitVec &other) const = default;

    /// Parity of popcount(this & other).
    bool dot(const BitVec &other) const;

    /// Cyclic rotation towards higher indices: result[(i + k) % size] = this[i].
    BitVec rotated(std::size_t k) const;

    /// Copy with bits [offset, offset + len) extracted into a length-len vector.
    BitVec slice(std::size_t offset, std::size_t len) const;
    /// Writes src into bits [offset, offset + src.size()).
    void paste(std::size_t offset, const BitVec &src);
    /// Concatenation (this | other).
    BitVec concat(const BitVec &other) const;

    /// Resizes, dropping bits beyond the new size.
    void resize(std::size_t num_bits);

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    /// '0'/'1' string, index 0 first.
    std::string to_string() const;

  private:
    void mask_tail();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// XOR of a word range: dst ^= src.
inline void xor_words(std::uint64_t *dst, const std::uint64_t *src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

inline std::size_t popcount_words(const std::uint64_t *src, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(src[i]));
    return total;
}

}  // namespace ubcycle
