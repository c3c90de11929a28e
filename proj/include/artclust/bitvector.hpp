#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "artclust/errors.hpp"

namespace artclust {

/// Fixed-width binary feature vector, packed 64 bits per word.
///
/// Width is set at construction and never changes. Bits past the width are
/// kept zero at all times so population counts can run straight over the
/// packed words.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t width)
        : width_(width), words_((width + 63) / 64, 0) {}

    static BitVector from_bits(const std::vector<std::uint8_t>& bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) v.set(i);
        return v;
    }

    std::size_t width() const { return width_; }

    bool test(std::size_t i) const {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    /// Number of set bits (the L1 norm).
    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    /// |this AND other| without materializing the intersection.
    std::size_t and_count(const BitVector& other) const {
        require_same_width(other);
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    BitVector and_with(const BitVector& other) const {
        require_same_width(other);
        BitVector out(width_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = words_[i] & other.words_[i];
        return out;
    }

    void and_assign(const BitVector& other) {
        require_same_width(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
    }

    std::span<const std::uint64_t> words() const { return words_; }

    /// Indices of all set bits, ascending.
    std::vector<std::uint32_t> set_bits() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                out.push_back(static_cast<std::uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out(width_);
        for (std::size_t i = 0; i < width_; ++i) out[i] = test(i) ? 1 : 0;
        return out;
    }

    bool operator==(const BitVector&) const = default;

private:
    void require_same_width(const BitVector& other) const {
        if (width_ != other.width_)
            throw DimensionError("bit vector widths differ: " +
                                 std::to_string(width_) + " vs " +
                                 std::to_string(other.width_));
    }

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace artclust
