#include "tbembed/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tbembed::algebra {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("bad hex digit: ") + c);
}

}  // namespace

BitVector::BitVector(std::size_t length) : length_(length), words_(words_for(length), 0) {}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
    if (index >= length) throw std::out_of_range("unit vector index out of range");
    BitVector v(length);
    v.set(index);
    return v;
}

BitVector BitVector::from_u64(std::size_t length, std::uint64_t value) {
    BitVector v(length);
    if (length == 0) return v;
    v.words_[0] = length < 64 ? value & ((std::uint64_t{1} << length) - 1) : value;
    return v;
}

BitVector BitVector::from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') v.set(i);
        else if (bits[i] != '0') throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    return v;
}

void BitVector::set(std::size_t i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= bit;
    else words_[i >> 6] &= ~bit;
}

std::uint64_t BitVector::get_bits(std::size_t pos, std::size_t count) const {
    if (count == 0) return 0;
    if (count > 64 || pos + count > length_) throw std::out_of_range("get_bits range");
    const std::size_t w = pos >> 6, off = pos & 63;
    std::uint64_t value = words_[w] >> off;
    if (off != 0 && off + count > 64) value |= words_[w + 1] << (64 - off);
    return count == 64 ? value : value & ((std::uint64_t{1} << count) - 1);
}

void BitVector::set_bits(std::size_t pos, std::size_t count, std::uint64_t value) {
    if (pos + count > length_) throw std::out_of_range("set_bits range");
    for (std::size_t i = 0; i < count; ++i) set(pos + i, (value >> i) & 1u);
}

BitVector BitVector::slice(std::size_t pos, std::size_t len) const {
    if (pos + len > length_) throw std::out_of_range("slice range");
    BitVector out(len);
    for (std::size_t i = 0; i < len; i += 64) {
        const std::size_t n = std::min<std::size_t>(64, len - i);
        out.words_[i >> 6] = get_bits(pos + i, n);
    }
    return out;
}

void BitVector::assign(std::size_t pos, const BitVector& src) {
    if (pos + src.size() > length_) throw std::out_of_range("assign range");
    if ((pos & 63) == 0) {
        const std::size_t base = pos >> 6;
        const std::size_t full = src.size() >> 6;
        for (std::size_t i = 0; i < full; ++i) words_[base + i] = src.words_[i];
        for (std::size_t i = full * 64; i < src.size(); ++i) set(pos + i, src.get(i));
        return;
    }
    for (std::size_t i = 0; i < src.size(); ++i) set(pos + i, src.get(i));
}

BitVector BitVector::concat(const BitVector& tail) const {
    BitVector out(length_ + tail.length_);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    out.assign(length_, tail);
    return out;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
}

bool BitVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x == 0; });
}

bool BitVector::dot(const BitVector& other) const {
    if (other.length_ != length_) throw std::invalid_argument("dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::optional<std::size_t> BitVector::lowest_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return std::nullopt;
}

std::uint64_t BitVector::to_u64() const {
    if (length_ > 64) throw std::out_of_range("to_u64 on vector longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.length_ != length_) throw std::invalid_argument("xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool BitVector::lex_less(const BitVector& other) const {
    for (std::size_t i = 0; i < std::min(length_, other.length_); ++i) {
        const bool a = get(i), b = other.get(i);
        if (a != b) return b;
    }
    return length_ < other.length_;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitVector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t pos = 0; pos < length_; pos += 8) {
        const auto byte = get_bits(pos, std::min<std::size_t>(8, length_ - pos));
        s += digits[(byte >> 4) & 15];
        s += digits[byte & 15];
    }
    return s;
}

BitVector BitVector::from_hex(const std::string& hex, std::size_t length) {
    if (hex.size() * 4 != ((length + 7) / 8) * 8) throw std::invalid_argument("hex length does not match bit length");
    BitVector v(length);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const std::uint64_t byte = static_cast<std::uint64_t>(hex_value(hex[i]) * 16 + hex_value(hex[i + 1]));
        const std::size_t pos = i * 4;
        v.set_bits(pos, std::min<std::size_t>(8, length - pos), byte);
    }
    return v;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (auto w : v.words()) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows needs at least one row to infer width");
    return from_rows(rows, rows.front().size());
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    std::vector<BitVector> v;
    for (const auto& s : rows) v.push_back(BitVector::from_string(s));
    return from_rows(v);
}

BitMatrix BitMatrix::from_linear_map(std::size_t n_in, std::size_t n_out,
                                     const std::function<BitVector(const BitVector&)>& f) {
    BitMatrix m(n_out, n_in);
    for (std::size_t j = 0; j < n_in; ++j) {
        const BitVector y = f(BitVector::unit(n_in, j));
        if (y.size() != n_out) throw std::invalid_argument("linear map produced wrong length");
        for (std::size_t i = 0; i < n_out; ++i)
            if (y.get(i)) m.set(i, j);
    }
    return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    auto& w = data_[r * stride_ + (c >> 6)];
    if (v) w |= bit;
    else w &= ~bit;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy(row_data(r), row_data(r) + stride_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: width mismatch");
    std::copy(v.words().begin(), v.words().end(), row_data(r));
}

void BitMatrix::append_row(const BitVector& v) {
    if (rows_ == 0 && cols_ == 0) {
        cols_ = v.size();
        stride_ = words_for(cols_);
    }
    if (v.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), v.words().begin(), v.words().end());
    ++rows_;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_data(a), row_data(a) + stride_, row_data(b));
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    auto* d = row_data(dst);
    const auto* s = row_data(src);
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto* p = row_data(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t x = p[w];
            while (x) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
                t.set(c, r);
                x &= x - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto* a = row_data(i);
        auto* o = out.row_data(i);
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t x = a[w];
            while (x) {
                const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
                const auto* b = other.row_data(k);
                for (std::size_t j = 0; j < out.stride_; ++j) o[j] ^= b[j];
                x &= x - 1;
            }
        }
    }
    return out;
}

BitVector BitMatrix::apply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    BitVector y(rows_);
    const auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto* p = row_data(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < stride_; ++w) acc ^= p[w] & xw[w];
        if (std::popcount(acc) & 1) y.set(r);
    }
    return y;
}

BitVector BitMatrix::left_apply(const BitVector& x) const {
    if (x.size() != rows_) throw std::invalid_argument("left_apply: length mismatch");
    BitVector y(cols_);
    auto yw = y.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        if (!x.get(r)) continue;
        const auto* p = row_data(r);
        for (std::size_t w = 0; w < stride_; ++w) yw[w] ^= p[w];
    }
    return y;
}

BitMatrix BitMatrix::vstack(const BitMatrix& below) const {
    if (below.cols_ != cols_) throw std::invalid_argument("vstack: width mismatch");
    BitMatrix out(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& right) const {
    if (right.rows_ != rows_) throw std::invalid_argument("hstack: height mismatch");
    BitMatrix out(rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        BitVector v = row(r).concat(right.row(r));
        out.set_row(r, v);
    }
    return out;
}

BitMatrix BitMatrix::power(std::uint64_t e) const {
    if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
    BitMatrix result = identity(rows_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool BitMatrix::is_identity() const {
    return rows_ == cols_ && *this == identity(rows_);
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t x) { return x == 0; });
}

namespace {

// Row echelon form of the first pivot_limit columns, in place.
std::size_t echelon_gaussian(BitMatrix& m, std::vector<std::size_t>* origin, std::size_t pivot_limit,
                             bool reduce_above) {
    std::size_t r = 0;
    const std::size_t stride = m.stride();
    for (std::size_t c = 0; c < pivot_limit && r < m.rows(); ++c) {
        const std::size_t wc = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t p = r;
        while (p < m.rows() && !(m.row_data(p)[wc] & bit)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        if (origin) std::swap((*origin)[p], (*origin)[r]);
        const auto* pr = m.row_data(r);
        for (std::size_t i = reduce_above ? 0 : r + 1; i < m.rows(); ++i) {
            if (i == r) continue;
            auto* row = m.row_data(i);
            if (!(row[wc] & bit)) continue;
            for (std::size_t w = wc; w < stride; ++w) row[w] ^= pr[w];
        }
        ++r;
    }
    return r;
}

std::size_t echelon_m4ri(BitMatrix& m, std::vector<std::size_t>* origin, unsigned k) {
    if (k == 0 || k > 16) throw std::invalid_argument("four-Russians block width must be in [1,16]");
    const std::size_t rows = m.rows(), cols = m.cols(), stride = m.stride();
    std::size_t r = 0;
    std::vector<std::uint8_t> applied(rows, 0);
    std::vector<std::size_t> pivcol;
    std::vector<std::uint64_t> table;

    auto bit_at = [&](std::size_t i, std::size_t c) { return (m.row_data(i)[c >> 6] >> (c & 63)) & 1u; };

    for (std::size_t c0 = 0; c0 < cols && r < rows; c0 += k) {
        const std::size_t kk = std::min<std::size_t>(k, cols - c0);
        const std::size_t w0 = c0 >> 6;
        const std::size_t span = stride - w0;
        pivcol.clear();
        std::fill(applied.begin() + static_cast<std::ptrdiff_t>(r), applied.end(), 0);

        auto xor_from = [&](std::size_t dst, std::size_t src) {
            auto* d = m.row_data(dst) + w0;
            const auto* s = m.row_data(src) + w0;
            for (std::size_t w = 0; w < span; ++w) d[w] ^= s[w];
        };

        for (std::size_t c = c0; c < c0 + kk && r + pivcol.size() < rows; ++c) {
            const std::size_t found = pivcol.size();
            for (std::size_t i = r + found; i < rows; ++i) {
                for (std::size_t j = applied[i]; j < found; ++j)
                    if (bit_at(i, pivcol[j])) xor_from(i, r + j);
                applied[i] = static_cast<std::uint8_t>(found);
                if (!bit_at(i, c)) continue;
                const std::size_t dst = r + found;
                m.swap_rows(i, dst);
                std::swap(applied[i], applied[dst]);
                if (origin) std::swap((*origin)[i], (*origin)[dst]);
                for (std::size_t j = 0; j < found; ++j)
                    if (bit_at(r + j, c)) xor_from(r + j, dst);
                pivcol.push_back(c);
                break;
            }
        }

        const std::size_t found = pivcol.size();
        if (found == 0) continue;
        const std::size_t entries = std::size_t{1} << found;
        table.assign(entries * span, 0);
        for (std::size_t g = 1; g < entries; ++g) {
            const std::size_t low = static_cast<std::size_t>(std::countr_zero(g));
            const std::size_t prev = g & (g - 1);
            const auto* src = m.row_data(r + low) + w0;
            auto* dst = table.data() + g * span;
            const auto* base = table.data() + prev * span;
            for (std::size_t w = 0; w < span; ++w) dst[w] = base[w] ^ src[w];
        }
        for (std::size_t i = r + found; i < rows; ++i) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < found; ++j) idx |= static_cast<std::size_t>(bit_at(i, pivcol[j])) << j;
            if (!idx) continue;
            auto* d = m.row_data(i) + w0;
            const auto* t = table.data() + idx * span;
            for (std::size_t w = 0; w < span; ++w) d[w] ^= t[w];
        }
        r += found;
    }
    return r;
}

std::size_t run_echelon(BitMatrix& work, std::vector<std::size_t>* origin, RankMethod method) {
    return method == RankMethod::four_russians ? echelon_m4ri(work, origin, 8)
                                               : echelon_gaussian(work, origin, work.cols(), false);
}

}  // namespace

std::size_t rank(const BitMatrix& m, RankMethod method) {
    BitMatrix work = m;
    return run_echelon(work, nullptr, method);
}

std::size_t rank_m4ri(const BitMatrix& m, unsigned k) {
    BitMatrix work = m;
    return echelon_m4ri(work, nullptr, k);
}

std::vector<std::size_t> independent_rows(const BitMatrix& m, RankMethod method) {
    BitMatrix work = m;
    std::vector<std::size_t> origin(m.rows());
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
    const std::size_t r = run_echelon(work, &origin, method);
    origin.resize(r);
    return origin;
}

BitMatrix rref(const BitMatrix& m) {
    BitMatrix work = m;
    echelon_gaussian(work, nullptr, work.cols(), true);
    return work;
}

BitMatrix kernel_basis(const BitMatrix& m) {
    BitMatrix work = m.hstack(BitMatrix::identity(m.rows()));
    const std::size_t r = echelon_gaussian(work, nullptr, m.cols(), false);
    BitMatrix basis(m.rows() - r, m.rows());
    for (std::size_t i = r; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            if (work.get(i, m.cols() + j)) basis.set(i - r, j);
    return basis;
}

BitMatrix complete_to_basis(const BitMatrix& subspace, std::size_t ambient_dim) {
    if (subspace.rows() > 0 && subspace.cols() != ambient_dim)
        throw std::invalid_argument("complete_to_basis: subspace width differs from ambient dimension");
    SpanSolver solver(ambient_dim, false);
    for (std::size_t i = 0; i < subspace.rows(); ++i)
        if (!solver.insert(subspace.row(i)))
            throw std::invalid_argument("complete_to_basis: subspace rows are linearly dependent");
    BitMatrix out(0, ambient_dim);
    for (std::size_t j = 0; j < ambient_dim && solver.dim() < ambient_dim; ++j) {
        BitVector e = BitVector::unit(ambient_dim, j);
        if (solver.insert(e)) out.append_row(e);
    }
    return out;
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    BitMatrix work = m.hstack(BitMatrix::identity(n));
    if (echelon_gaussian(work, nullptr, n, true) < n) return std::nullopt;
    BitMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (work.get(i, n + j)) inv.set(i, j);
    return inv;
}

SpanSolver::SpanSolver(std::size_t width, bool track)
    : width_(width), track_(track), pivot_row_(width, -1) {}

bool SpanSolver::insert(const BitVector& v) {
    if (v.size() != width_) throw std::invalid_argument("SpanSolver: width mismatch");
    BitVector x = v;
    BitVector combo = track_ ? BitVector(width_) : BitVector();
    if (track_) combo.set(pivots_.size());
    while (auto low = x.lowest_set()) {
        const auto pr = pivot_row_[*low];
        if (pr < 0) {
            pivot_row_[*low] = static_cast<std::ptrdiff_t>(rows_.size());
            pivots_.push_back(*low);
            rows_.push_back(std::move(x));
            if (track_) combos_.push_back(std::move(combo));
            return true;
        }
        x ^= rows_[static_cast<std::size_t>(pr)];
        if (track_) combo ^= combos_[static_cast<std::size_t>(pr)];
    }
    return false;
}

bool SpanSolver::contains(const BitVector& v) const {
    BitVector x = v;
    while (auto low = x.lowest_set()) {
        const auto pr = pivot_row_[*low];
        if (pr < 0) return false;
        x ^= rows_[static_cast<std::size_t>(pr)];
    }
    return true;
}

std::optional<BitVector> SpanSolver::solve(const BitVector& v) const {
    if (!track_) throw std::logic_error("SpanSolver::solve needs coefficient tracking");
    BitVector x = v;
    BitVector combo(width_);
    while (auto low = x.lowest_set()) {
        const auto pr = pivot_row_[*low];
        if (pr < 0) return std::nullopt;
        x ^= rows_[static_cast<std::size_t>(pr)];
        combo ^= combos_[static_cast<std::size_t>(pr)];
    }
    return combo;
}

}  // namespace tbembed::algebra
