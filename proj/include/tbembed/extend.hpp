#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tbembed/embedding.hpp"
#include "tbembed/field_matrix.hpp"
#include "tbembed/linear_extension.hpp"

namespace tbembed::extend {

using algebra::BitVector;
using algebra::Elem;
using algebra::FieldMatrix;
using algebra::FieldSpec;
using embed::EmbeddingParams;
using embed::StateMap;

struct SExtendOptions {
    // Sampled mode checks relations among `trials` random pairs of states.
    bool sampled = false;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
};

struct SExtendResult {
    bool extendible = true;
    // Sorted (lexicographically) multiset of s states.
    std::vector<BitVector> witness;
    // true: sum of alpha(v) is zero and sum of alpha(sigma(v)) is not
    bool witness_forward = true;
    bool exhaustive = true;
};

// s in {2, 4}; exhaustive mode needs m*b <= 8 for s = 4 and m*b <= 20 for s = 2.
SExtendResult is_s_extendible(const StateMap& sigma, const EmbeddingParams& p, unsigned s,
                              const SExtendOptions& opt = {});

// Uniform random permutation of the 2^r states (r <= 20).
StateMap random_state_permutation(std::size_t r, std::uint64_t seed);
// Tabulated map from an explicit image list in integer state order.
StateMap table_map(std::size_t r, std::vector<std::uint64_t> table);

struct RelatedQuadruple {
    // Rows (v, Mv) in (GF(2^m))^{2n}.
    std::array<std::vector<Elem>, 4> w;
    Elem i = 0, j = 0, x = 0, y = 0;
    std::size_t pos_ij = 0, pos_xy = 1;
    // first-half coordinates other than pos_ij and pos_xy, in index order
    std::vector<Elem> rest;
};

enum class TrailingMode { all_values, zero };

struct RelatedOptions {
    std::size_t pos_ij = 0, pos_xy = 1;
    // default: all values for n = 2 (no trailing coordinates), zero otherwise
    std::optional<TrailingMode> trailing;
};

void enumerate_4_related(const FieldMatrix& M, const std::function<void(const RelatedQuadruple&)>& visit,
                         const RelatedOptions& opt = {});
std::vector<RelatedQuadruple> all_4_related(const FieldMatrix& M, const RelatedOptions& opt = {});

// The eps-embedded rows sum to zero: in every coordinate the four values pair up.
bool is_totally_related(const RelatedQuadruple& q);
// Two equal pairs of rows.
bool is_coupled(const RelatedQuadruple& q);

struct RelatedCheck {
    std::size_t quadruples = 0;
    std::size_t totally_related = 0;
    std::size_t coupled = 0;
    std::size_t mismatches = 0;
    std::optional<RelatedQuadruple> first_mismatch;
    bool equivalent() const { return mismatches == 0; }
};

// Exhaustive check of "totally related iff coupled".
RelatedCheck check_related_equivalence(const FieldMatrix& M, const RelatedOptions& opt = {});

struct FitSextuple {
    int x = 0, y = 0, z = 0, a = 0, b = 0, c = 0;
    bool operator==(const FitSextuple&) const = default;
};

// All sextuples in the hypothesis of the theorem for n x n matrices.
std::vector<FitSextuple> fit_sextuples(int n);
bool valid_sextuple(const FitSextuple& s, int n);
// Number of determinant terms per sum; 0 when the sextuple imposes no sum.
std::uint64_t fit_cardinality(const FitSextuple& s, int n);
// The n! products m_{1,p(1)} ... m_{n,p(n)}, permutations in lexicographic order.
std::vector<Elem> determinant_terms(const FieldMatrix& M);
bool fits(const FieldMatrix& M, const FitSextuple& s);

struct TheoremConditions {
    bool det_ok = false;
    bool minors_ok = false;
    bool all_fit = false;
    bool verdict = false;
    std::vector<FitSextuple> failing;
};

// n <= 4.
TheoremConditions theorem_conditions(const FieldMatrix& M);

// alpha(v) = (eps(v), eps(Mv)).
EmbeddingParams related_params(const FieldMatrix& M);

struct CorollaryReport {
    TheoremConditions conditions;
    std::size_t maps_tested = 0;
    std::size_t extendible = 0;
    std::vector<std::string> failed_maps;
    std::optional<SExtendResult> first_failure;
    StateMap first_failure_map;
    bool all_extendible() const { return extendible == maps_tested; }
};

// Identity, brick-wise patched inversion, a transposition, and `random_maps`
// random permutations of V, each tested for 4-extendibility.
CorollaryReport validate_corollary(const FieldMatrix& M, std::size_t random_maps = 20, std::uint64_t seed = 1);

}  // namespace tbembed::extend
