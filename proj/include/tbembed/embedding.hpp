#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tbembed/bit_matrix.hpp"
#include "tbembed/field.hpp"

namespace tbembed::embed {

using algebra::BitMatrix;
using algebra::BitVector;
using algebra::Elem;
using algebra::FieldSpec;

class EmbeddingParams {
public:
    // Plain parallel embedding, t = 1.
    static EmbeddingParams eps(const FieldSpec& field, unsigned b);
    // Orbit embedding; requires mixing^t = I.
    static EmbeddingParams orbit(const FieldSpec& field, unsigned b, const BitMatrix& mixing, unsigned t);
    // (eps(v), eps(Mv), ..., eps(M^{t-1} v)) without the closure requirement.
    static EmbeddingParams partial_orbit(const FieldSpec& field, unsigned b, const BitMatrix& mixing, unsigned t);

    const FieldSpec& field() const { return field_; }
    unsigned m() const { return field_.m(); }
    unsigned b() const { return b_; }
    unsigned t() const { return t_; }
    std::size_t r() const { return std::size_t{m()} * b_; }
    std::size_t block() const { return std::size_t{1} << m(); }
    std::size_t segment() const { return block() * b_; }
    std::size_t s() const { return segment() * t_; }
    const BitMatrix& mixing() const { return mixing_; }
    const BitMatrix& power(unsigned h) const { return powers_.at(h); }
    bool closed() const { return closed_; }

private:
    EmbeddingParams(const FieldSpec& field, unsigned b, unsigned t, const BitMatrix& mixing, bool closed);

    FieldSpec field_;
    unsigned b_;
    unsigned t_;
    BitMatrix mixing_;
    std::vector<BitMatrix> powers_;
    bool closed_;
};

// 0-based position of the single 1 in eps'(x): 0 for x = 0, i for x = g^i
// with i in [1, 2^m - 1].
std::size_t eps_index(const FieldSpec& field, Elem x);
Elem eps_value(const FieldSpec& field, std::size_t index);
BitVector eps_prime(const FieldSpec& field, Elem x);
BitVector eps(const EmbeddingParams& p, const BitVector& v);
BitVector alpha(const EmbeddingParams& p, const BitVector& v);
// Inverse of alpha on admissible vectors.
std::optional<BitVector> alpha_preimage(const EmbeddingParams& p, const BitVector& w);

BitMatrix build_H(const EmbeddingParams& p, const std::vector<BitVector>& plaintexts);
BitMatrix build_D(const EmbeddingParams& p, const std::vector<BitVector>& plaintexts);

// Zero state plus every state with exactly one nonzero brick.
std::vector<BitVector> single_brick_states(const EmbeddingParams& p);

struct AdmissibleOptions {
    algebra::RankMethod method = algebra::RankMethod::four_russians;
    std::uint64_t seed = 1;
    std::size_t extra_random = 64;
    unsigned max_rounds = 4;
};

struct AdmissibleSpace {
    std::size_t dim = 0;
    // plaintexts whose images form the basis rows
    std::vector<BitVector> generators;
    BitMatrix basis;
    std::size_t lower_bound = 0;
    std::size_t upper_bound = 0;
    std::optional<std::size_t> formula_dim;
    std::optional<std::size_t> dual_bound;
    bool exact = false;
    std::string method;
};

// 2^m b - (b-1)
std::size_t eps_dim_formula(unsigned m, unsigned b);
// 2^m b t - (b t - 1) - m b (t - 1)
std::size_t orbit_dim_formula(unsigned m, unsigned b, unsigned t);

AdmissibleSpace admissible_dim(const EmbeddingParams& p, const AdmissibleOptions& opt = {});

// Independent vectors orthogonal to every alpha(v).
BitMatrix dual_relations(const EmbeddingParams& p);

// Parameter sets used throughout.
FieldSpec aes_embedding_field();
EmbeddingParams aes_eps();
EmbeddingParams aes_alpha();
EmbeddingParams present_eps();
EmbeddingParams present_alpha();
EmbeddingParams serpent_eps();

}  // namespace tbembed::embed
