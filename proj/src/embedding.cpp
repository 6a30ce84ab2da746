#include "tbembed/embedding.hpp"

#include <stdexcept>

#include "tbembed/ciphers.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::embed {

EmbeddingParams::EmbeddingParams(const FieldSpec& field, unsigned b, unsigned t, const BitMatrix& mixing, bool closed)
    : field_(field), b_(b), t_(t), mixing_(mixing), closed_(closed) {
    if (b == 0 || t == 0) throw std::invalid_argument("brick count and orbit length must be positive");
    const std::size_t n = r();
    if (mixing.rows() != n || mixing.cols() != n) throw std::invalid_argument("mixing matrix must be mb x mb");
    powers_.push_back(BitMatrix::identity(n));
    for (unsigned h = 1; h < t; ++h) powers_.push_back(mixing * powers_.back());
}

EmbeddingParams EmbeddingParams::eps(const FieldSpec& field, unsigned b) {
    return EmbeddingParams(field, b, 1, BitMatrix::identity(std::size_t{field.m()} * b), true);
}

EmbeddingParams EmbeddingParams::orbit(const FieldSpec& field, unsigned b, const BitMatrix& mixing, unsigned t) {
    EmbeddingParams p(field, b, t, mixing, true);
    if (!(mixing * p.powers_.back()).is_identity())
        throw std::invalid_argument("mixing matrix does not have order dividing t");
    return p;
}

EmbeddingParams EmbeddingParams::partial_orbit(const FieldSpec& field, unsigned b, const BitMatrix& mixing, unsigned t) {
    EmbeddingParams p(field, b, t, mixing, false);
    p.closed_ = (mixing * p.powers_.back()).is_identity();
    return p;
}

std::size_t eps_index(const FieldSpec& field, Elem x) {
    if (x == 0) return 0;
    const std::uint32_t i = field.dlog(x);
    return i == 0 ? field.size() - 1 : i;
}

Elem eps_value(const FieldSpec& field, std::size_t index) {
    if (index >= field.size()) throw std::out_of_range("eps index outside the block");
    return index == 0 ? 0 : field.exp(index);
}

BitVector eps_prime(const FieldSpec& field, Elem x) {
    if (x >= field.size()) throw std::out_of_range("element outside the field");
    return BitVector::unit(field.size(), eps_index(field, x));
}

namespace {

void write_segment(const EmbeddingParams& p, const BitVector& v, BitVector& out, std::size_t base) {
    const unsigned m = p.m();
    for (unsigned j = 0; j < p.b(); ++j)
        out.set(base + j * p.block() + eps_index(p.field(), static_cast<Elem>(v.get_bits(j * m, m))));
}

void check_state(const EmbeddingParams& p, const BitVector& v) {
    if (v.size() != p.r()) throw std::invalid_argument("state length does not match m*b");
}

}  // namespace

BitVector eps(const EmbeddingParams& p, const BitVector& v) {
    check_state(p, v);
    BitVector out(p.segment());
    write_segment(p, v, out, 0);
    return out;
}

BitVector alpha(const EmbeddingParams& p, const BitVector& v) {
    check_state(p, v);
    BitVector out(p.s());
    for (unsigned h = 0; h < p.t(); ++h) write_segment(p, h == 0 ? v : p.power(h).apply(v), out, h * p.segment());
    return out;
}

std::optional<BitVector> alpha_preimage(const EmbeddingParams& p, const BitVector& w) {
    if (w.size() != p.s()) throw std::invalid_argument("vector length does not match s");
    BitVector v(p.r());
    for (unsigned j = 0; j < p.b(); ++j) {
        const BitVector blk = w.slice(j * p.block(), p.block());
        if (blk.weight() != 1) return std::nullopt;
        v.set_bits(j * p.m(), p.m(), eps_value(p.field(), *blk.lowest_set()));
    }
    if (alpha(p, v) != w) return std::nullopt;
    return v;
}

BitMatrix build_H(const EmbeddingParams& p, const std::vector<BitVector>& plaintexts) {
    BitMatrix h(plaintexts.size(), p.segment());
    for (std::size_t i = 0; i < plaintexts.size(); ++i) h.set_row(i, eps(p, plaintexts[i]));
    return h;
}

BitMatrix build_D(const EmbeddingParams& p, const std::vector<BitVector>& plaintexts) {
    BitMatrix d(plaintexts.size(), p.s());
    for (std::size_t i = 0; i < plaintexts.size(); ++i) d.set_row(i, alpha(p, plaintexts[i]));
    return d;
}

std::vector<BitVector> single_brick_states(const EmbeddingParams& p) {
    std::vector<BitVector> out{BitVector(p.r())};
    for (unsigned j = 0; j < p.b(); ++j)
        for (Elem x = 1; x < p.field().size(); ++x) {
            BitVector v(p.r());
            v.set_bits(j * p.m(), p.m(), x);
            out.push_back(v);
        }
    return out;
}

std::size_t eps_dim_formula(unsigned m, unsigned b) { return (std::size_t{1} << m) * b - (b - 1); }

std::size_t orbit_dim_formula(unsigned m, unsigned b, unsigned t) {
    const std::size_t bt = std::size_t{b} * t;
    return (std::size_t{1} << m) * bt - (bt - 1) - std::size_t{m} * b * (t - 1);
}

BitMatrix dual_relations(const EmbeddingParams& p) {
    if (p.t() < 2) throw std::invalid_argument("dual relations need an orbit of length at least 2");
    if (!algebra::inverse(p.mixing())) throw std::invalid_argument("mixing matrix is singular");
    const unsigned m = p.m(), b = p.b(), t = p.t();
    const std::size_t q = p.block();

    // image[l][x] = M applied to the state holding x in brick l
    std::vector<std::vector<BitVector>> image(b, std::vector<BitVector>(q));
    for (unsigned l = 0; l < b; ++l)
        for (Elem x = 0; x < q; ++x) {
            BitVector v(p.r());
            v.set_bits(l * m, m, x);
            image[l][x] = p.mixing().apply(v);
        }

    BitMatrix out(0, p.s());
    for (unsigned h = 0; h + 1 < t; ++h) {
        const std::size_t seg = h * p.segment(), next = (h + 1) * p.segment();
        for (unsigned i = 0; i < b; ++i)
            for (unsigned k = 0; k < m; ++k) {
                BitVector row(p.s());
                for (unsigned l = 0; l < b; ++l)
                    for (Elem x = 0; x < q; ++x)
                        if (image[l][x].get(i * m + k)) row.set(seg + l * q + eps_index(p.field(), x));
                for (Elem y = 0; y < q; ++y)
                    if ((y >> k) & 1) row.set(next + i * q + eps_index(p.field(), y));
                out.append_row(row);
            }
    }
    const std::size_t blocks = std::size_t{b} * t;
    for (std::size_t a = 0; a + 1 < blocks; ++a) {
        BitVector row(p.s());
        for (std::size_t c = 0; c < 2 * q; ++c) row.set(a * q + c);
        out.append_row(row);
    }
    return out;
}

AdmissibleSpace admissible_dim(const EmbeddingParams& p, const AdmissibleOptions& opt) {
    AdmissibleSpace out;
    const unsigned m = p.m(), b = p.b(), t = p.t();
    out.lower_bound = eps_dim_formula(m, b);
    out.upper_bound = out.lower_bound * t;
    std::vector<BitVector> candidates = single_brick_states(p);

    if (t == 1) {
        out.formula_dim = out.lower_bound;
        BitMatrix h = build_H(p, candidates);
        const auto idx = algebra::independent_rows(h, opt.method);
        for (auto i : idx) out.generators.push_back(candidates[i]);
        out.dim = idx.size();
        out.basis = build_H(p, out.generators);
        out.exact = true;
        out.method = "formula and rank of the single-brick basis";
        return out;
    }

    const std::size_t relations = algebra::rank(dual_relations(p));
    out.dual_bound = p.s() - relations;
    const std::size_t target = std::min(*out.dual_bound, out.upper_bound);
    if (p.closed()) out.formula_dim = orbit_dim_formula(m, b, t);

    SplitMix64 rng(opt.seed);
    std::size_t want_random = target > candidates.size() ? target - candidates.size() : 0;
    want_random += opt.extra_random;
    std::vector<std::size_t> idx;
    for (unsigned round = 0; round < opt.max_rounds; ++round) {
        for (std::size_t i = 0; i < want_random; ++i) candidates.push_back(rng.bits(p.r()));
        idx = algebra::independent_rows(build_D(p, candidates), opt.method);
        if (idx.size() >= target) break;
        want_random = 2 * opt.extra_random + (target - idx.size());
    }
    if (idx.size() > target) throw std::logic_error("admissible rank exceeds the orthogonality bound");
    for (auto i : idx) out.generators.push_back(candidates[i]);
    out.dim = idx.size();
    out.basis = build_D(p, out.generators);
    out.exact = out.dim == target;
    out.method = "rank of single-brick and seeded random images, capped by the dual relations";
    return out;
}

FieldSpec aes_embedding_field() { return FieldSpec::aes(0xFB); }

EmbeddingParams aes_eps() { return EmbeddingParams::eps(aes_embedding_field(), 16); }

EmbeddingParams aes_alpha() {
    return EmbeddingParams::orbit(aes_embedding_field(), 16, ciphers::mixing_layer_matrix(ciphers::Layer::aes_full), 8);
}

EmbeddingParams present_eps() { return EmbeddingParams::eps(FieldSpec::standard(4), 16); }

EmbeddingParams present_alpha() {
    return EmbeddingParams::orbit(FieldSpec::standard(4), 16, ciphers::mixing_layer_matrix(ciphers::Layer::present_player), 3);
}

EmbeddingParams serpent_eps() { return EmbeddingParams::eps(FieldSpec::standard(4), 32); }

}  // namespace tbembed::embed
