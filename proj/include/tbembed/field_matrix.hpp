#pragma once

#include <vector>

#include "tbembed/bit_matrix.hpp"
#include "tbembed/field.hpp"

namespace tbembed::algebra {

// Square matrix over GF(2^m).
class FieldMatrix {
public:
    FieldMatrix(const FieldSpec& field, std::size_t n);
    FieldMatrix(const FieldSpec& field, std::vector<std::vector<Elem>> rows);

    std::size_t n() const { return n_; }
    const FieldSpec& field() const { return field_; }
    Elem at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, Elem v) { a_[i * n_ + j] = v; }

    std::vector<Elem> apply(const std::vector<Elem>& v) const;
    Elem determinant() const;
    Elem minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    bool all_proper_minors_nonzero() const;

    // Brick-linear map on mn bits: brick l occupies bits [m*l, m*l+m).
    BitMatrix to_binary() const;

private:
    FieldSpec field_;
    std::size_t n_;
    std::vector<Elem> a_;
};

}  // namespace tbembed::algebra
