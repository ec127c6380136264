#ifndef POLARSS_BITVEC_HPP
#define POLARSS_BITVEC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polarss {

// Dense GF(2) vector, bit-packed into 64-bit words.
//
// Bit accessors (get/set/flip) are 0-based storage operations; support()
// returns 1-based positions, which is the convention used by every domain
// API and file format in this project.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    // s consists of '0'/'1' characters, leftmost = position 1.
    static BitVector from_string(std::string_view s);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }
    bool operator==(const BitVector& other) const = default;
    bool operator<(const BitVector& other) const;  // length, then word order

    std::size_t weight() const;
    bool is_zero() const;

    // 1-based positions of nonzero entries, ascending.
    std::vector<std::size_t> support() const;

    // true iff support(other) is contained in support(*this); lengths must match.
    bool covers(const BitVector& other) const;

    // GF(2) inner product; lengths must match.
    bool dot(const BitVector& other) const;

    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix, row-major, each row padded to whole words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(BitVector::word_count(cols)),
          data_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n);
    // Rows given as '0'/'1' strings of equal length.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t m = std::uint64_t(1) << (c & 63);
        if (v) data_[r * stride_ + (c >> 6)] |= m;
        else   data_[r * stride_ + (c >> 6)] &= ~m;
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    BitVector column(std::size_t c) const;

    // dst ^= src, both row indices of this matrix.
    void xor_rows(std::size_t dst, std::size_t src);
    // v ^= row r (v.size() must equal cols()).
    void xor_row_into(std::size_t r, BitVector& v) const;

    bool operator==(const BitMatrix& other) const = default;

    // Rows as '0'/'1' strings joined by '\n' (the textual matrix form of the
    // file formats and CLI output).
    std::string to_string() const;

private:
    std::span<const std::uint64_t> row_span(std::size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<std::uint64_t> row_span(std::size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    friend BitMatrix kron(const BitMatrix&, const BitMatrix&);
    friend BitMatrix mat_mul(const BitMatrix&, const BitMatrix&);
    friend BitVector vec_mat_mul(const BitVector&, const BitMatrix&);

    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> data_;
};

// Kronecker product: entry ((i*b.rows+r),(j*b.cols+c)) = a[i][j] * b[r][c].
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

// G_N = [[1,0],[1,1]]^(kron n), N = 2^n. Lower-triangular with unit diagonal.
// Throws std::length_error above the cap (matrices grow as 4^n bits).
BitMatrix polar_generator(unsigned n, unsigned max_n = 20);

// H_N = [[1,1],[0,1]]^(kron n); satisfies H[i][j] = G[N-1-i][N-1-j] (0-based).
BitMatrix dual_generator(unsigned n, unsigned max_n = 20);

// Solve x * m = target over GF(2) for a row-combination x (length m.rows()).
// Deterministic: Gaussian elimination, pivot = lowest row index. Returns
// nullopt when target is outside the row space.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target);

// Row vector (length m.rows()) times matrix -> length m.cols().
BitVector vec_mat_mul(const BitVector& x, const BitMatrix& m);

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& m);

// Greedy independent-row basis (lowest indices kept first).
BitMatrix row_basis(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);

}  // namespace polarss

#endif
