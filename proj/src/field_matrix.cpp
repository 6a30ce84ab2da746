#include "tbembed/field_matrix.hpp"

#include <functional>
#include <stdexcept>

namespace tbembed::algebra {

FieldMatrix::FieldMatrix(const FieldSpec& field, std::size_t n) : field_(field), n_(n), a_(n * n, 0) {}

FieldMatrix::FieldMatrix(const FieldSpec& field, std::vector<std::vector<Elem>> rows)
    : field_(field), n_(rows.size()), a_(rows.size() * rows.size(), 0) {
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != n_) throw std::invalid_argument("field matrix must be square");
        for (std::size_t j = 0; j < n_; ++j) {
            if (rows[i][j] >= field.size()) throw std::out_of_range("matrix entry outside the field");
            set(i, j, rows[i][j]);
        }
    }
}

std::vector<Elem> FieldMatrix::apply(const std::vector<Elem>& v) const {
    if (v.size() != n_) throw std::invalid_argument("field matrix apply: length mismatch");
    std::vector<Elem> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i] ^= field_.mul(at(i, j), v[j]);
    return out;
}

Elem FieldMatrix::minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    const std::size_t k = rows.size();
    if (cols.size() != k) throw std::invalid_argument("minor needs as many rows as columns");
    std::vector<Elem> w(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) w[i * k + j] = at(rows[i], cols[j]);
    Elem det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && w[p * k + c] == 0) ++p;
        if (p == k) return 0;
        if (p != c)
            for (std::size_t j = 0; j < k; ++j) std::swap(w[p * k + j], w[c * k + j]);
        const Elem piv = w[c * k + c];
        det = field_.mul(det, piv);
        const Elem inv = field_.inv_patched(piv);
        for (std::size_t i = c + 1; i < k; ++i) {
            const Elem f = field_.mul(w[i * k + c], inv);
            if (!f) continue;
            for (std::size_t j = c; j < k; ++j) w[i * k + j] ^= field_.mul(f, w[c * k + j]);
        }
    }
    return det;
}

Elem FieldMatrix::determinant() const {
    std::vector<std::size_t> idx(n_);
    for (std::size_t i = 0; i < n_; ++i) idx[i] = i;
    return minor(idx, idx);
}

bool FieldMatrix::all_proper_minors_nonzero() const {
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n_); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n_; ++i)
            if ((mask >> i) & 1) s.push_back(i);
        subsets.push_back(std::move(s));
    }
    for (const auto& r : subsets)
        for (const auto& c : subsets)
            if (r.size() == c.size() && minor(r, c) == 0) return false;
    return true;
}

BitMatrix FieldMatrix::to_binary() const {
    const unsigned m = field_.m();
    BitMatrix out(m * n_, m * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t l = 0; l < n_; ++l)
            for (unsigned k = 0; k < m; ++k) {
                const Elem col = field_.mul(at(i, l), Elem{1} << k);
                for (unsigned r = 0; r < m; ++r)
                    if ((col >> r) & 1) out.set(m * i + r, m * l + k);
            }
    return out;
}

}  // namespace tbembed::algebra
