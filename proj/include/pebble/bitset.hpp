#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pebble {

// Fixed-capacity bitset sized at construction. Kept deliberately small:
// the game states only need set/test/count and whole-set comparisons.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits)
        : size_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool all() const {
        if (size_ == 0) return true;
        for (std::size_t i = 0; i + 1 < words_.size(); ++i)
            if (words_[i] != ~std::uint64_t{0}) return false;
        const std::size_t tail = size_ & 63;
        const std::uint64_t last = words_.back();
        return tail == 0 ? last == ~std::uint64_t{0}
                         : last == ((std::uint64_t{1} << tail) - 1);
    }

    bool none() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace pebble
