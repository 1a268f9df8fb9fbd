#include "ubcycle/gf2.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ubcycle {

namespace {

void check_len(const BitMatrix &m, const BitVec &v, const char *what) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": vector length " + std::to_string(v.size()) +
                                    " does not match matrix columns " + std::to_string(m.cols()));
    }
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(BitVec::word_count(cols)), data_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, const std::vector<BitVec> &rows) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (value) {
        row_ptr(r)[c >> 6] |= mask;
    } else {
        row_ptr(r)[c >> 6] &= ~mask;
    }
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    std::copy_n(row_ptr(r), stride_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec &v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    std::copy_n(v.words().begin(), stride_, row_ptr(r));
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t *src = row_ptr(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t word = src[w];
            while (word != 0) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
                t.set(c, r);
                word &= word - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::hstack(const BitMatrix &other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("hstack: row count mismatch");
    BitMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) out.set_row(r, row(r).concat(other.row(r)));
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix &other) const {
    if (other.cols_ != cols_) throw std::invalid_argument("vstack: column count mismatch");
    BitMatrix out(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

BitMatrix BitMatrix::multiply(const BitMatrix &other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("multiply: inner dimension mismatch");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t word = row_ptr(r)[w];
            while (word != 0) {
                const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
                xor_words(out.row_ptr(r), other.row_ptr(k), out.stride_);
                word &= word - 1;
            }
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

// ---------------------------------------------------------------- echelon

RowEchelon::RowEchelon(const BitMatrix &m) {
    BitMatrix work = m;
    const std::size_t stride = work.stride();
    std::size_t next = 0;
    for (std::size_t c = 0; c < work.cols() && next < work.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::size_t p = next;
        while (p < work.rows() && !(work.row_ptr(p)[w] & mask)) ++p;
        if (p == work.rows()) continue;
        if (p != next) std::swap_ranges(work.row_ptr(p), work.row_ptr(p) + stride, work.row_ptr(next));
        for (std::size_t r = 0; r < work.rows(); ++r) {
            if (r != next && (work.row_ptr(r)[w] & mask)) xor_words(work.row_ptr(r), work.row_ptr(next), stride);
        }
        pivots_.push_back(c);
        ++next;
    }
    basis_ = BitMatrix(next, m.cols());
    for (std::size_t r = 0; r < next; ++r) std::copy_n(work.row_ptr(r), stride, basis_.row_ptr(r));
}

void RowEchelon::reduce(BitVec &v) const {
    std::uint64_t *dst = v.words().data();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const std::size_t c = pivots_[r];
        if ((dst[c >> 6] >> (c & 63)) & 1U) xor_words(dst, basis_.row_ptr(r), basis_.stride());
    }
}

bool RowEchelon::contains(const BitVec &v) const {
    if (v.size() != cols()) throw std::invalid_argument("row-space membership: length mismatch");
    BitVec tmp = v;
    reduce(tmp);
    return tmp.none();
}

// ---------------------------------------------------------------- free functions

BitMatrix circulant(const RingPoly &a) { return first_rows(a, a.n()); }

BitMatrix first_rows(const RingPoly &g, std::size_t s) {
    if (s < 1 || s > g.n()) throw std::out_of_range("first_rows: s must lie in [1, n]");
    BitMatrix m(s, g.n());
    BitVec row = g.coeffs();
    for (std::size_t i = 0; i < s; ++i) {
        m.set_row(i, row);
        row = row.rotated(1);
    }
    return m;
}

std::size_t rank(const BitMatrix &m) { return RowEchelon(m).rank(); }

bool in_row_space(const BitMatrix &m, const BitVec &v) {
    check_len(m, v, "in_row_space");
    return RowEchelon(m).contains(v);
}

std::vector<BitVec> kernel_basis(const BitMatrix &m) {
    const RowEchelon ech(m);
    const auto &piv = ech.pivot_columns();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<BitVec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVec v(m.cols());
        v.set(f);
        for (std::size_t r = 0; r < piv.size(); ++r) {
            if (ech.basis().get(r, f)) v.set(piv[r]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

BitVec mat_vec(const BitMatrix &m, const BitVec &v) {
    check_len(m, v, "mat_vec");
    BitVec out(m.rows());
    const std::uint64_t *src = v.words().data();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const std::uint64_t *row = m.row_ptr(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < m.stride(); ++w) acc ^= row[w] & src[w];
        if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
}

SparseRows to_sparse(const BitMatrix &m) {
    SparseRows s;
    s.cols = m.cols();
    s.row_support.resize(m.rows());
    s.col_support.resize(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c : m.row(r).support()) {
            s.row_support[r].push_back(static_cast<std::uint32_t>(c));
            s.col_support[c].push_back(static_cast<std::uint32_t>(r));
        }
    }
    return s;
}

// ---------------------------------------------------------------- file formats

void write_alist(std::ostream &out, const BitMatrix &m) {
    const SparseRows s = to_sparse(m);
    std::size_t max_col = 0;
    std::size_t max_row = 0;
    for (const auto &c : s.col_support) max_col = std::max(max_col, c.size());
    for (const auto &r : s.row_support) max_row = std::max(max_row, r.size());
    // alist lists variable nodes (columns) first
    out << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c) out << s.col_support[c].size() << (c + 1 == m.cols() ? '\n' : ' ');
    for (std::size_t r = 0; r < m.rows(); ++r) out << s.row_support[r].size() << (r + 1 == m.rows() ? '\n' : ' ');
    auto emit = [&](const std::vector<std::uint32_t> &list, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            out << (i < list.size() ? list[i] + 1 : 0) << (i + 1 == width ? '\n' : ' ');
        }
    };
    for (const auto &c : s.col_support) emit(c, max_col);
    for (const auto &r : s.row_support) emit(r, max_row);
}

BitMatrix read_alist(std::istream &in) {
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t max_col = 0;
    std::size_t max_row = 0;
    if (!(in >> cols >> rows >> max_col >> max_row)) throw std::runtime_error("alist: bad header");
    std::vector<std::size_t> col_deg(cols);
    std::vector<std::size_t> row_deg(rows);
    for (auto &d : col_deg) in >> d;
    for (auto &d : row_deg) in >> d;
    BitMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t i = 0; i < max_col; ++i) {
            std::size_t r = 0;
            if (!(in >> r)) throw std::runtime_error("alist: truncated column lists");
            if (r != 0) {
                if (r > rows) throw std::runtime_error("alist: row index out of range");
                m.set(r - 1, c);
            }
        }
    }
    // row lists are redundant; consume and cross-check
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t seen = 0;
        for (std::size_t i = 0; i < max_row; ++i) {
            std::size_t c = 0;
            if (!(in >> c)) throw std::runtime_error("alist: truncated row lists");
            if (c != 0) {
                if (c > cols || !m.get(r, c - 1)) throw std::runtime_error("alist: row and column lists disagree");
                ++seen;
            }
        }
        if (seen != row_deg[r] || m.row_weight(r) != seen) throw std::runtime_error("alist: row degree mismatch");
    }
    return m;
}

namespace {
constexpr std::array<char, 8> kPchkMagic{'U', 'B', 'P', 'C', 'H', 'K', '0', '1'};

void put_u32(std::ostream &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::istream &in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw std::runtime_error("pchk: truncated header");
        v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
    }
    return v;
}
}  // namespace

void write_dense_pchk(std::ostream &out, const BitMatrix &m) {
    out.write(kPchkMagic.data(), kPchkMagic.size());
    put_u32(out, static_cast<std::uint32_t>(m.rows()));
    put_u32(out, static_cast<std::uint32_t>(m.cols()));
    unsigned char byte = 0;
    std::size_t filled = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) byte |= static_cast<unsigned char>(1U << filled);
            if (++filled == 8) {
                out.put(static_cast<char>(byte));
                byte = 0;
                filled = 0;
            }
        }
    }
    if (filled != 0) out.put(static_cast<char>(byte));
}

BitMatrix read_dense_pchk(std::istream &in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kPchkMagic) throw std::runtime_error("pchk: bad magic");
    const std::uint32_t rows = get_u32(in);
    const std::uint32_t cols = get_u32(in);
    BitMatrix m(rows, cols);
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    int byte = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if ((i & 7) == 0) {
            byte = in.get();
            if (byte == std::char_traits<char>::eof()) throw std::runtime_error("pchk: truncated body");
        }
        if ((byte >> (i & 7)) & 1) m.set(i / cols, i % cols);
    }
    return m;
}

}  // namespace ubcycle
