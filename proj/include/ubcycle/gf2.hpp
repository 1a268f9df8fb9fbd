#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ubcycle/bitvec.hpp"
#include "ubcycle/ring.hpp"

namespace ubcycle {

/// Dense row-major GF(2) matrix, each row packed into 64-bit words.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::size_t cols, const std::vector<BitVec> &rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const { return (row_ptr(r)[c >> 6] >> (c & 63)) & 1U; }
    void set(std::size_t r, std::size_t c, bool value = true);
    void flip(std::size_t r, std::size_t c) { row_ptr(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    std::uint64_t *row_ptr(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint64_t *row_ptr(std::size_t r) const { return data_.data() + r * stride_; }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec &v);
    std::size_t row_weight(std::size_t r) const { return popcount_words(row_ptr(r), stride_); }

    BitMatrix transposed() const;
    /// [this | other]
    BitMatrix hstack(const BitMatrix &other) const;
    /// this on top of other
    BitMatrix vstack(const BitMatrix &other) const;
    BitMatrix multiply(const BitMatrix &other) const;

    bool is_zero() const;
    bool operator==(const BitMatrix &other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Reduced row-echelon form of a matrix's row space, reused across
/// membership queries. Immutable after construction.
class RowEchelon {
  public:
    RowEchelon() = default;
    explicit RowEchelon(const BitMatrix &m);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return basis_.cols(); }
    const std::vector<std::size_t> &pivot_columns() const { return pivots_; }
    /// The rank() nonzero rows of the reduced echelon form.
    const BitMatrix &basis() const { return basis_; }

    /// Clears every pivot column of v. The result is zero iff v is in the row space.
    void reduce(BitVec &v) const;
    bool contains(const BitVec &v) const;

  private:
    BitMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Row i is the coefficient vector of x^i a(x).
BitMatrix circulant(const RingPoly &a);
/// First s rows of circulant(g). Throws std::out_of_range unless 1 <= s <= n.
BitMatrix first_rows(const RingPoly &g, std::size_t s);

std::size_t rank(const BitMatrix &m);
bool in_row_space(const BitMatrix &m, const BitVec &v);
/// Basis of the right null space {v : m v = 0}, cols - rank(m) vectors.
std::vector<BitVec> kernel_basis(const BitMatrix &m);
BitVec mat_vec(const BitMatrix &m, const BitVec &v);

/// Sparse adjacency lists for message passing.
struct SparseRows {
    std::size_t cols = 0;
    std::vector<std::vector<std::uint32_t>> row_support;
    std::vector<std::vector<std::uint32_t>> col_support;
};
SparseRows to_sparse(const BitMatrix &m);

/// alist text format (MacKay), 1-based indices.
void write_alist(std::ostream &out, const BitMatrix &m);
BitMatrix read_alist(std::istream &in);

/// Dense binary dump: magic "UBPCHK01", uint32 LE rows, uint32 LE cols, then
/// rows*cols bits row-major, LSB-first within each byte, final byte zero padded.
void write_dense_pchk(std::ostream &out, const BitMatrix &m);
BitMatrix read_dense_pchk(std::istream &in);

}  // namespace ubcycle
