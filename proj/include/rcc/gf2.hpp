#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Dense linear algebra over the two-element field.
namespace rcc::gf2 {

class BitVector {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector unit(std::size_t size, std::size_t index) {
        BitVector v(size);
        v.set(index);
        return v;
    }

    static BitVector from_indices(std::size_t size, std::span<const int> indices) {
        BitVector v(size);
        for (int i : indices)
            v.flip(static_cast<std::size_t>(i));
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const {
        assert(i < size_);
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        assert(i < size_);
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    void reset(std::size_t i) { set(i, false); }

    void flip(std::size_t i) {
        assert(i < size_);
        words_[i / 64] ^= std::uint64_t{1} << (i % 64);
    }

    std::size_t count() const noexcept {
        std::size_t total = 0;
        for (auto w : words_)
            total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    bool none() const noexcept {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    bool any() const noexcept { return !none(); }

    /// Index of the lowest set bit at or after `from`, or npos.
    std::size_t find_next(std::size_t from) const noexcept {
        if (from >= size_)
            return npos;
        std::size_t w = from / 64;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from % 64));
        while (true) {
            if (word != 0)
                return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
            if (++w == words_.size())
                return npos;
            word = words_[w];
        }
    }

    std::size_t first_set() const noexcept { return find_next(0); }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::size_t i = first_set(); i != npos; i = find_next(i + 1))
            out.push_back(static_cast<int>(i));
        return out;
    }

    BitVector& operator^=(const BitVector& other) {
        assert(size_ == other.size_);
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
        return *this;
    }

    friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    /// Parity of the bitwise AND (the GF(2) dot product).
    bool dot(const BitVector& other) const {
        assert(size_ == other.size_);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t k) {
        BitMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            m.set(i, i);
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

    const BitVector& row(std::size_t r) const { return rows_[r]; }
    BitVector& row(std::size_t r) { return rows_[r]; }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = rows_[r].first_set(); c != BitVector::npos; c = rows_[r].find_next(c + 1))
                t.set(c, r);
        return t;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Row combination x·M: XOR of the rows selected by `x`.
inline BitVector combine_rows(const BitMatrix& m, const BitVector& x) {
    assert(x.size() == m.rows());
    BitVector out(m.cols());
    for (std::size_t r = x.first_set(); r != BitVector::npos; r = x.find_next(r + 1))
        out ^= m.row(r);
    return out;
}

/// Matrix-vector product M·y.
inline BitVector multiply(const BitMatrix& m, const BitVector& y) {
    assert(y.size() == m.cols());
    BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.set(r, m.row(r).dot(y));
    return out;
}

namespace detail {

// Incremental row-echelon basis. Every stored row's lowest set bit is its pivot
// column and no two rows share a pivot, so reduction terminates.
class EchelonBasis {
public:
    EchelonBasis(std::size_t cols, std::size_t tags) : tags_(tags), pivot_of_col_(cols, -1) {}

    // Reduces `v` as far as the basis allows, XOR-ing the matching tags into `tag`.
    void reduce(BitVector& v, BitVector& tag) const {
        for (std::size_t p = v.first_set(); p != BitVector::npos; p = v.first_set()) {
            const int k = pivot_of_col_[p];
            if (k < 0)
                return;
            v ^= rows_[static_cast<std::size_t>(k)];
            tag ^= tags_of_rows_[static_cast<std::size_t>(k)];
        }
    }

    // Returns false (and leaves the basis untouched) if `v` is already spanned.
    bool insert(BitVector v, BitVector tag) {
        reduce(v, tag);
        if (v.none())
            return false;
        pivot_of_col_[v.first_set()] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        tags_of_rows_.push_back(std::move(tag));
        return true;
    }

    std::size_t size() const noexcept { return rows_.size(); }
    std::size_t tag_size() const noexcept { return tags_; }

private:
    std::size_t tags_;
    std::vector<int> pivot_of_col_;
    std::vector<BitVector> rows_;
    std::vector<BitVector> tags_of_rows_;
};

} // namespace detail

inline std::size_t rank(const BitMatrix& m) {
    detail::EchelonBasis basis(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        basis.insert(m.row(r), BitVector(0));
    return basis.size();
}

struct Solution {
    BitVector particular;
    std::vector<BitVector> nullspace;
};

/// Solves x·M = target for a row selector x. Returns nullopt when `target` is
/// outside the row space. Otherwise the solution set is `particular` plus any
/// combination of `nullspace` (a basis of the left nullspace, rows − rank vectors).
/// Rows are inserted in index order and pivots are the lowest set bit, so the
/// particular solution is reproducible.
inline std::optional<Solution> solve(const BitMatrix& m, const BitVector& target) {
    assert(target.size() == m.cols());
    detail::EchelonBasis basis(m.cols(), m.rows());
    Solution sol;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVector v = m.row(r);
        BitVector tag = BitVector::unit(m.rows(), r);
        basis.reduce(v, tag);
        if (v.none())
            sol.nullspace.push_back(std::move(tag));
        else
            basis.insert(std::move(v), std::move(tag));
    }
    BitVector residual = target;
    sol.particular = BitVector(m.rows());
    basis.reduce(residual, sol.particular);
    if (residual.any())
        return std::nullopt;
    return sol;
}

} // namespace rcc::gf2
