#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "tbembed/embedding.hpp"

namespace tbembed::embed {

using StateMap = std::function<BitVector(const BitVector&)>;

struct ExtendibilityResult {
    bool extendible = true;
    // States whose images sum to zero on one side but not on the other.
    std::vector<BitVector> witness;
    // true: the relation holds for alpha(v) and fails for alpha(sigma(v))
    bool witness_forward = true;
};

class NotExtendible : public std::runtime_error {
public:
    NotExtendible(const std::string& what, ExtendibilityResult result)
        : std::runtime_error(what), result_(std::move(result)) {}
    const ExtendibilityResult& result() const { return result_; }

private:
    ExtendibilityResult result_;
};

// All 2^{mb} states, in integer order.
std::vector<BitVector> all_states(const EmbeddingParams& p);

// Exhaustive test over V (mb <= 20).
ExtendibilityResult check_linear_extendibility(const StateMap& sigma, const EmbeddingParams& p);
bool is_linearly_extendible(const StateMap& sigma, const EmbeddingParams& p);

// A_sigma kept as its action on a basis of T plus the identity on a
// complement spanned by unit vectors.
class LinearExtension {
public:
    static LinearExtension exhaustive(const StateMap& sigma, const EmbeddingParams& p);
    // For maps known to be extendible; the images of `generators` define the
    // map and `samples` random states are checked against it.
    static LinearExtension structured(const StateMap& sigma, const EmbeddingParams& p,
                                      const std::vector<BitVector>& generators, std::size_t samples,
                                      std::uint64_t seed);

    BitVector apply(const BitVector& w) const;
    BitMatrix materialize() const;

    std::size_t dim_t() const { return basis_.rows(); }
    const BitMatrix& t_basis() const { return basis_; }
    const BitMatrix& t_images() const { return images_; }
    const BitMatrix& complement() const { return complement_; }

private:
    LinearExtension(const EmbeddingParams& p, BitMatrix basis, BitMatrix images);

    std::size_t s_;
    BitMatrix basis_;
    BitMatrix images_;
    BitMatrix complement_;
    algebra::SpanSolver solver_;
};

BitMatrix linear_extension(const StateMap& sigma, const EmbeddingParams& p);

// The block permutation of W induced by a map that permutes whole bricks, or
// nullopt when sigma is not such a map.
std::optional<BitMatrix> brick_permutation_lift(const StateMap& sigma, const EmbeddingParams& p, std::size_t samples,
                                                std::uint64_t seed);

}  // namespace tbembed::embed
