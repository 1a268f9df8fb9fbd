#include "ubcycle/bitvec.hpp"

#include <algorithm>
#include <stdexcept>

namespace ubcycle {

BitVec BitVec::from_support(std::size_t num_bits, std::span<const std::size_t> support) {
    BitVec v(num_bits);
    for (std::size_t i : support) {
        if (i >= num_bits) throw std::out_of_range("support index out of range");
        v.flip(i);
    }
    return v;
}

void BitVec::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t BitVec::popcount() const { return popcount_words(words_.data(), words_.size()); }

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

long long BitVec::highest_set() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != 0) return static_cast<long long>(w * 64 + 63 - std::countl_zero(words_[w]));
    }
    return -1;
}

long long BitVec::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) return static_cast<long long>(w * 64 + std::countr_zero(words_[w]));
    }
    return -1;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVec size mismatch in xor");
    xor_words(words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVec size mismatch in and");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

bool BitVec::dot(const BitVec &other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVec size mismatch in dot");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVec BitVec::rotated(std::size_t k) const {
    BitVec out(size_);
    if (size_ == 0) return out;
    k %= size_;
    if (k == 0) return *this;
    // out = (this << k) | (this >> (size - k)), both truncated to size bits.
    const std::size_t word_shift = k >> 6;
    const unsigned bit_shift = static_cast<unsigned>(k & 63);
    const std::size_t nw = words_.size();
    for (std::size_t w = 0; w + word_shift < nw; ++w) {
        out.words_[w + word_shift] |= words_[w] << bit_shift;
        if (bit_shift != 0 && w + word_shift + 1 < nw) out.words_[w + word_shift + 1] |= words_[w] >> (64 - bit_shift);
    }
    out.mask_tail();
    const std::size_t back = size_ - k;
    const std::size_t bw = back >> 6;
    const unsigned bb = static_cast<unsigned>(back & 63);
    for (std::size_t w = bw; w < nw; ++w) {
        std::uint64_t piece = words_[w] >> bb;
        if (bb != 0 && w + 1 < nw) piece |= words_[w + 1] << (64 - bb);
        out.words_[w - bw] |= piece;
    }
    out.mask_tail();
    return out;
}

BitVec BitVec::slice(std::size_t offset, std::size_t len) const {
    if (offset + len > size_) throw std::out_of_range("BitVec slice out of range");
    BitVec out(len);
    if ((offset & 63) == 0) {
        std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(offset >> 6), out.words_.size(), out.words_.begin());
        out.mask_tail();
        return out;
    }
    for (std::size_t i = 0; i < len; ++i) {
        if (get(offset + i)) out.set(i);
    }
    return out;
}

void BitVec::paste(std::size_t offset, const BitVec &src) {
    if (offset + src.size_ > size_) throw std::out_of_range("BitVec paste out of range");
    for (std::size_t i = 0; i < src.size_; ++i) set(offset + i, src.get(i));
}

BitVec BitVec::concat(const BitVec &other) const {
    BitVec out(size_ + other.size_);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    out.paste(size_, other);
    return out;
}

void BitVec::resize(std::size_t num_bits) {
    size_ = num_bits;
    words_.resize(word_count(num_bits), 0);
    mask_tail();
}

std::string BitVec::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

void BitVec::mask_tail() {
    const std::size_t rem = size_ & 63;
    if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

}  // namespace ubcycle
