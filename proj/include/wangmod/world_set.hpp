#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace wangmod {

using World = std::uint32_t;

/// Dense set of worlds 0..size-1 backed by 64-bit words.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static WorldSet full(std::size_t size) {
        WorldSet s(size);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(World w) const noexcept { return (words_[w >> 6] >> (w & 63)) & 1u; }
    void set(World w) noexcept { words_[w >> 6] |= std::uint64_t{1} << (w & 63); }
    void reset(World w) noexcept { words_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }
    void assign(World w, bool v) noexcept { v ? set(w) : reset(w); }

    bool empty() const noexcept {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Least member, or size() when empty.
    World first() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<World>(i * 64 + std::countr_zero(words_[i]));
        return static_cast<World>(size_);
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<World>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<World> members() const {
        std::vector<World> out;
        for_each([&](World w) { out.push_back(w); });
        return out;
    }

    WorldSet complement() const {
        WorldSet s(size_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool subset_of(const WorldSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const WorldSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    WorldSet& operator|=(const WorldSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    WorldSet& operator&=(const WorldSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    WorldSet& operator-=(const WorldSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
    friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
    friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }
    friend bool operator==(const WorldSet&, const WorldSet&) = default;

    /// Low 64 members as a mask; meaningful when size() <= 64.
    std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

    static WorldSet from_mask(std::size_t size, std::uint64_t mask) {
        if (size > 64) throw std::invalid_argument("WorldSet::from_mask: size exceeds 64");
        WorldSet s(size);
        if (!s.words_.empty()) s.words_[0] = mask;
        s.trim();
        return s;
    }

private:
    void trim() noexcept {
        if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace wangmod
