#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace nnbox {

/// Fixed-length bit vector sized at construction. Bit i is coordinate i+1
/// (or element i+1 of a ground set). Bits past size() are always zero.
class BitSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitSet() = default;
    explicit BitSet(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool on = true) {
        const Word bit = Word{1} << (i % kWordBits);
        if (on) {
            words_[i / kWordBits] |= bit;
        } else {
            words_[i / kWordBits] &= ~bit;
        }
    }
    void reset(std::size_t i) { set(i, false); }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const {
        for (Word w : words_)
            if (w != 0) return false;
        return true;
    }
    bool any() const { return !none(); }

    /// Index of the lowest set bit, or size() when empty.
    std::size_t find_first() const { return find_next_from(0); }
    /// Index of the lowest set bit strictly after i, or size().
    std::size_t find_next(std::size_t i) const { return find_next_from(i + 1); }

    /// Index of the highest set bit, or size() when empty.
    std::size_t find_last() const {
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (words_[w] != 0) return w * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        }
        return size_;
    }

    BitSet& operator&=(const BitSet& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    BitSet& operator|=(const BitSet& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    BitSet& operator^=(const BitSet& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
    friend BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }

    /// True iff (*this & o) has a set bit, without materializing it.
    bool intersects(const BitSet& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }
    std::size_t intersection_count(const BitSet& o) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) c += static_cast<std::size_t>(std::popcount(words_[w] & o.words_[w]));
        return c;
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;

    /// Orders by size, then as a binary number with bit 0 least significant.
    friend bool operator<(const BitSet& a, const BitSet& b) {
        if (a.size_ != b.size_) return a.size_ < b.size_;
        for (std::size_t w = a.words_.size(); w-- > 0;) {
            if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
        }
        return false;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::size_t>{}(size_);
        for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::size_t find_next_from(std::size_t i) const {
        if (i >= size_) return size_;
        std::size_t w = i / kWordBits;
        Word cur = words_[w] & (~Word{0} << (i % kWordBits));
        while (true) {
            if (cur != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct BitSetHash {
    std::size_t operator()(const BitSet& b) const { return b.hash(); }
};

}  // namespace nnbox
