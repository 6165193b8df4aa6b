// Dense GF(2) vectors and matrices: rank, reduced row echelon form.
// Used for LDPC construction, systematic encoding, and the OSD basis search.

#pragma once

#include <cstdint>
#include <vector>

namespace mahoraga::gf2 {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int size) : size_(size), words_((size + 63) / 64, 0) {}

    int size() const { return size_; }

    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool v) {
        std::uint64_t mask = 1ULL << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(int i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    void xor_with(const BitVec& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
    }

    bool any() const {
        for (auto w : words_) {
            if (w) return true;
        }
        return false;
    }

    int popcount() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool operator==(const BitVec& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Parity of <a, b> over GF(2); vectors must have equal word counts.
inline bool dot(const BitVec& a, const BitVec& b) {
    std::uint64_t acc = 0;
    const auto& aw = a.words();
    const auto& bw = b.words();
    for (std::size_t w = 0; w < aw.size(); ++w) acc ^= aw[w] & bw[w];
    return __builtin_parityll(acc);
}

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return data_[r].get(c); }
    void set(int r, int c, bool v) { data_[r].set(c, v); }

    BitVec& row(int r) { return data_[r]; }
    const BitVec& row(int r) const { return data_[r]; }

    int rank() const;

    // In-place reduced row echelon form. Returns the pivot column of each
    // nonzero row, in row order; rows below rank are zero.
    std::vector<int> rref();

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BitVec> data_;
};

}  // namespace mahoraga::gf2
