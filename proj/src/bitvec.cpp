#include "polarss/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace polarss {

namespace {

// Zero any bits past len in the last word.
void mask_tail(std::span<std::uint64_t> words, std::size_t len) {
    if (len % 64 != 0 && !words.empty())
        words.back() &= (std::uint64_t(1) << (len % 64)) - 1;
}

}  // namespace

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("bit string must be 0/1");
    }
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) throw std::invalid_argument("BitVector length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::operator<(const BitVector& other) const {
    if (len_ != other.len_) return len_ < other.len_;
    return words_ < other.words_;
}

std::size_t BitVector::weight() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::size_t(std::popcount(w));
    return n;
}

bool BitVector::is_zero() const {
    for (std::uint64_t w : words_) if (w) return false;
    return true;
}

std::vector<std::size_t> BitVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) out.push_back(i + 1);
    return out;
}

bool BitVector::covers(const BitVector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("covers: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (other.words_[w] & ~words_[w]) return false;
    return true;
}

bool BitVector::dot(const BitVector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) return BitMatrix();
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw std::invalid_argument("from_strings: ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) {
            if (rows[r][c] == '1') m.set(r, c, true);
            else if (rows[r][c] != '0') throw std::invalid_argument("bit string must be 0/1");
        }
    }
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    auto src = row_span(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    auto dst = row_span(r);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
}

BitVector BitMatrix::column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    auto d = row_span(dst);
    auto s = row_span(src);
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::xor_row_into(std::size_t r, BitVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("xor_row_into: length mismatch");
    auto s = row_span(r);
    auto d = v.words();
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

std::string BitMatrix::to_string() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
        if (r + 1 < rows_) s.push_back('\n');
    }
    return s;
}

namespace {

// dst |= src shifted left by `offset` bits. src tail bits are zero, so no
// masking is needed beyond the shift itself.
void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                std::size_t src_bits, std::size_t offset) {
    const std::size_t word_off = offset / 64, bit_off = offset % 64;
    const std::size_t src_words = BitVector::word_count(src_bits);
    for (std::size_t w = 0; w < src_words; ++w) {
        const std::uint64_t v = src[w];
        if (!v) continue;
        dst[word_off + w] |= v << bit_off;
        if (bit_off != 0 && word_off + w + 1 < dst.size())
            dst[word_off + w + 1] |= v >> (64 - bit_off);
    }
}

}  // namespace

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                or_shifted(out.row_span(i * b.rows() + r), b.row_span(r),
                           b.cols(), j * b.cols());
        }
    }
    return out;
}

namespace {

BitMatrix kron_power(const BitMatrix& kernel, unsigned n, unsigned max_n,
                     const char* name) {
    if (n > max_n) throw std::length_error(std::string(name) + ": exponent above cap");
    BitMatrix m = BitMatrix::identity(1);
    for (unsigned i = 0; i < n; ++i) m = kron(m, kernel);
    return m;
}

}  // namespace

BitMatrix polar_generator(unsigned n, unsigned max_n) {
    static const BitMatrix g = BitMatrix::from_strings({"10", "11"});
    return kron_power(g, n, max_n, "polar_generator");
}

BitMatrix dual_generator(unsigned n, unsigned max_n) {
    static const BitMatrix h = BitMatrix::from_strings({"11", "01"});
    return kron_power(h, n, max_n, "dual_generator");
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target) {
    if (target.size() != m.cols())
        throw std::invalid_argument("solve: target length must equal column count");
    const std::size_t rows = m.rows(), cols = m.cols();
    constexpr std::size_t npos = std::size_t(-1);

    BitMatrix r = m;
    BitMatrix e = BitMatrix::identity(rows);
    std::vector<std::size_t> pivot_row(cols, npos);
    std::vector<bool> used(rows, false);

    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t p = npos;
        for (std::size_t row = 0; row < rows; ++row) {
            if (!used[row] && r.get(row, col)) { p = row; break; }
        }
        if (p == npos) continue;
        used[p] = true;
        pivot_row[col] = p;
        for (std::size_t row = 0; row < rows; ++row) {
            if (row != p && r.get(row, col)) {
                r.xor_rows(row, p);
                e.xor_rows(row, p);
            }
        }
    }

    BitVector t = target;
    BitVector x(rows);
    for (std::size_t col = 0; col < cols; ++col) {
        if (!t.get(col)) continue;
        if (pivot_row[col] == npos) return std::nullopt;
        r.xor_row_into(pivot_row[col], t);
        e.xor_row_into(pivot_row[col], x);
    }
    return x;
}

BitVector vec_mat_mul(const BitVector& x, const BitMatrix& m) {
    if (x.size() != m.rows())
        throw std::invalid_argument("vec_mat_mul: vector length must equal row count");
    BitVector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (x.get(r)) m.xor_row_into(r, out);
    return out;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row_span(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(i, k)) continue;
            auto src = b.row_span(k);
            for (std::size_t w = 0; w < src.size(); ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix row_basis(const BitMatrix& m) {
    std::vector<BitVector> reduced;
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVector v = m.row(r);
        for (const BitVector& b : reduced) {
            // reduce by leading bit
            std::size_t lead = b.support().empty() ? 0 : b.support()[0] - 1;
            if (v.get(lead)) v ^= b;
        }
        if (!v.is_zero()) {
            reduced.push_back(v);
            keep.push_back(r);
            // keep reduced rows ordered by leading bit for the scan above
            for (std::size_t i = reduced.size(); i-- > 1;) {
                if (reduced[i].support()[0] < reduced[i - 1].support()[0])
                    std::swap(reduced[i], reduced[i - 1]);
                else break;
            }
        }
    }
    BitMatrix out(keep.size(), m.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) out.set_row(i, m.row(keep[i]));
    return out;
}

std::size_t rank(const BitMatrix& m) { return row_basis(m).rows(); }

}  // namespace polarss
