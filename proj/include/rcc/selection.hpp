#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rcc/gf2.hpp"

namespace rcc {

/// A subset of {0..size-1}, tagged by what it indexes so crossing and region
/// sets cannot be mixed up.
template <class Tag>
class Selection {
public:
    Selection() = default;
    explicit Selection(std::size_t size) : bits_(size) {}
    explicit Selection(gf2::BitVector bits) : bits_(std::move(bits)) {}

    static Selection of(std::size_t size, std::span<const int> members) {
        Selection s(size);
        for (int m : members)
            s.insert(m);
        return s;
    }

    static Selection of(std::size_t size, std::initializer_list<int> members) {
        return of(size, std::span<const int>(members.begin(), members.size()));
    }

    static Selection all(std::size_t size) {
        Selection s(size);
        for (std::size_t i = 0; i < size; ++i)
            s.bits_.set(i);
        return s;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept { return bits_.count(); }
    bool empty() const noexcept { return bits_.none(); }

    bool contains(int i) const { return bits_.test(static_cast<std::size_t>(i)); }
    void insert(int i) { bits_.set(static_cast<std::size_t>(i)); }
    void erase(int i) { bits_.reset(static_cast<std::size_t>(i)); }
    void toggle(int i) { bits_.flip(static_cast<std::size_t>(i)); }

    /// Members in increasing order.
    std::vector<int> members() const { return bits_.indices(); }

    const gf2::BitVector& bits() const noexcept { return bits_; }

    Selection& operator^=(const Selection& other) {
        bits_ ^= other.bits_;
        return *this;
    }

    friend Selection operator^(Selection lhs, const Selection& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    friend bool operator==(const Selection&, const Selection&) = default;

private:
    gf2::BitVector bits_;
};

struct CrossingTag {};
struct RegionTag {};

using CrossingSelection = Selection<CrossingTag>;
using RegionSelection = Selection<RegionTag>;

} // namespace rcc
