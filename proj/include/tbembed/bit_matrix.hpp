#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tbembed::algebra {

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length);

    static BitVector unit(std::size_t length, std::size_t index);
    static BitVector from_u64(std::size_t length, std::uint64_t value);
    static BitVector from_string(const std::string& bits);

    std::size_t size() const { return length_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::uint64_t get_bits(std::size_t pos, std::size_t count) const;
    void set_bits(std::size_t pos, std::size_t count, std::uint64_t value);
    BitVector slice(std::size_t pos, std::size_t len) const;
    void assign(std::size_t pos, const BitVector& src);
    BitVector concat(const BitVector& tail) const;

    std::size_t weight() const;
    bool is_zero() const;
    bool dot(const BitVector& other) const;
    std::optional<std::size_t> lowest_set() const;
    std::uint64_t to_u64() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    bool operator==(const BitVector& other) const = default;
    // lexicographic on bit index 0 first
    bool lex_less(const BitVector& other) const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::string to_string() const;
    std::string to_hex() const;
    static BitVector from_hex(const std::string& hex, std::size_t length);

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);
    static BitMatrix from_rows(std::span<const BitVector> rows);
    static BitMatrix from_strings(const std::vector<std::string>& rows);
    // column j of the result is f(e_j)
    static BitMatrix from_linear_map(std::size_t n_in, std::size_t n_out,
                                     const std::function<BitVector(const BitVector&)>& f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const { return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v = true);

    std::uint64_t* row_data(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint64_t* row_data(std::size_t r) const { return data_.data() + r * stride_; }
    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    void append_row(const BitVector& v);
    void swap_rows(std::size_t a, std::size_t b);
    void xor_row(std::size_t dst, std::size_t src);

    BitMatrix transpose() const;
    BitMatrix operator*(const BitMatrix& other) const;
    // M x for a column vector x
    BitVector apply(const BitVector& x) const;
    // x M for a row vector x
    BitVector left_apply(const BitVector& x) const;
    BitMatrix vstack(const BitMatrix& below) const;
    BitMatrix hstack(const BitMatrix& right) const;
    BitMatrix power(std::uint64_t e) const;

    bool is_identity() const;
    bool is_zero() const;
    bool operator==(const BitMatrix& other) const = default;

    std::size_t memory_bytes() const { return data_.size() * sizeof(std::uint64_t); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

enum class RankMethod { gaussian, four_russians };

std::size_t rank(const BitMatrix& m, RankMethod method = RankMethod::gaussian);
std::size_t rank_m4ri(const BitMatrix& m, unsigned k = 8);

// Original row indices of a maximal independent subset, in the order found.
std::vector<std::size_t> independent_rows(const BitMatrix& m, RankMethod method = RankMethod::gaussian);

BitMatrix rref(const BitMatrix& m);
BitMatrix kernel_basis(const BitMatrix& m);
BitMatrix complete_to_basis(const BitMatrix& subspace, std::size_t ambient_dim);
std::optional<BitMatrix> inverse(const BitMatrix& m);

// Incremental echelon form over a fixed width that remembers how each stored
// row was built from inserted vectors.
class SpanSolver {
public:
    explicit SpanSolver(std::size_t width, bool track = true);

    // Returns true when v was independent of the current span.
    bool insert(const BitVector& v);
    bool contains(const BitVector& v) const;
    // Coefficients over the inserted independent vectors, if v is in the span.
    std::optional<BitVector> solve(const BitVector& v) const;
    std::size_t dim() const { return pivots_.size(); }
    std::size_t width() const { return width_; }

private:
    std::size_t width_;
    bool track_;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combos_;
    std::vector<std::size_t> pivots_;
    std::vector<std::ptrdiff_t> pivot_row_;
};

}  // namespace tbembed::algebra
