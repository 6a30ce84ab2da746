#include "tbembed/linear_extension.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "tbembed/rng.hpp"

namespace tbembed::embed {

std::vector<BitVector> all_states(const EmbeddingParams& p) {
    if (p.r() > 20) throw std::invalid_argument("state space too large to enumerate (m*b > 20)");
    std::vector<BitVector> out;
    out.reserve(std::size_t{1} << p.r());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.r()); ++x) out.push_back(BitVector::from_u64(p.r(), x));
    return out;
}

namespace {

bool better(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Smallest fundamental relation among the rows of `lhs` that fails on `rhs`.
std::optional<std::vector<std::size_t>> first_violation(const std::vector<BitVector>& lhs,
                                                        const std::vector<BitVector>& rhs, std::size_t width) {
    algebra::SpanSolver solver(width, true);
    std::vector<std::size_t> basis;
    std::vector<bool> in_basis(lhs.size(), false);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (solver.insert(lhs[i])) {
            basis.push_back(i);
            in_basis[i] = true;
        }
    std::optional<std::vector<std::size_t>> best;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (in_basis[i]) continue;
        const BitVector c = *solver.solve(lhs[i]);
        std::vector<std::size_t> rel{i};
        BitVector sum = rhs[i];
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (c.get(k)) {
                rel.push_back(basis[k]);
                sum ^= rhs[basis[k]];
            }
        if (sum.is_zero()) continue;
        std::sort(rel.begin(), rel.end());
        if (!best || better(rel, *best)) best = rel;
    }
    return best;
}

}  // namespace

ExtendibilityResult check_linear_extendibility(const StateMap& sigma, const EmbeddingParams& p) {
    const auto states = all_states(p);
    std::vector<BitVector> P, Q;
    std::unordered_set<BitVector, algebra::BitVectorHash> seen;
    for (const auto& v : states) {
        const BitVector sv = sigma(v);
        if (sv.size() != p.r() || !seen.insert(sv).second) throw std::invalid_argument("sigma is not a permutation of V");
        P.push_back(alpha(p, v));
        Q.push_back(alpha(p, sv));
    }
    ExtendibilityResult res;
    const auto fwd = first_violation(P, Q, p.s());
    const auto bwd = first_violation(Q, P, p.s());
    std::optional<std::vector<std::size_t>> pick;
    if (fwd && (!bwd || !better(*bwd, *fwd))) {
        pick = fwd;
        res.witness_forward = true;
    } else if (bwd) {
        pick = bwd;
        res.witness_forward = false;
    }
    if (pick) {
        res.extendible = false;
        for (auto i : *pick) res.witness.push_back(states[i]);
    }
    return res;
}

bool is_linearly_extendible(const StateMap& sigma, const EmbeddingParams& p) {
    return check_linear_extendibility(sigma, p).extendible;
}

LinearExtension::LinearExtension(const EmbeddingParams& p, BitMatrix basis, BitMatrix images)
    : s_(p.s()), basis_(std::move(basis)), images_(std::move(images)), solver_(p.s(), true) {
    complement_ = algebra::complete_to_basis(basis_, s_);
    for (std::size_t i = 0; i < basis_.rows(); ++i) solver_.insert(basis_.row(i));
    for (std::size_t i = 0; i < complement_.rows(); ++i) solver_.insert(complement_.row(i));
    if (algebra::rank(images_) != images_.rows()) throw std::logic_error("images of the T basis are dependent");
}

LinearExtension LinearExtension::exhaustive(const StateMap& sigma, const EmbeddingParams& p) {
    const auto check = check_linear_extendibility(sigma, p);
    if (!check.extendible) throw NotExtendible("map is not linearly extendible", check);
    algebra::SpanSolver solver(p.s(), false);
    BitMatrix basis(0, p.s()), images(0, p.s());
    for (const auto& v : all_states(p)) {
        const BitVector a = alpha(p, v);
        if (!solver.insert(a)) continue;
        basis.append_row(a);
        images.append_row(alpha(p, sigma(v)));
    }
    return LinearExtension(p, std::move(basis), std::move(images));
}

LinearExtension LinearExtension::structured(const StateMap& sigma, const EmbeddingParams& p,
                                            const std::vector<BitVector>& generators, std::size_t samples,
                                            std::uint64_t seed) {
    algebra::SpanSolver solver(p.s(), false);
    BitMatrix basis(0, p.s()), images(0, p.s());
    for (const auto& g : generators) {
        const BitVector a = alpha(p, g);
        if (!solver.insert(a)) continue;
        basis.append_row(a);
        images.append_row(alpha(p, sigma(g)));
    }
    LinearExtension ext(p, std::move(basis), std::move(images));
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const BitVector v = rng.bits(p.r());
        const BitVector a = alpha(p, v);
        if (!solver.contains(a)) throw std::invalid_argument("generators do not span the admissible space");
        if (ext.apply(a) != alpha(p, sigma(v))) {
            ExtendibilityResult r;
            r.extendible = false;
            r.witness = {v};
            throw NotExtendible("sampled state contradicts the structured extension", r);
        }
    }
    return ext;
}

BitVector LinearExtension::apply(const BitVector& w) const {
    const auto c = solver_.solve(w);
    if (!c) throw std::logic_error("vector outside the ambient space");
    BitVector out(s_);
    const std::size_t d = basis_.rows();
    for (std::size_t k = 0; k < d; ++k)
        if (c->get(k)) {
            const auto* row = images_.row_data(k);
            auto ow = out.words();
            for (std::size_t w2 = 0; w2 < ow.size(); ++w2) ow[w2] ^= row[w2];
        }
    for (std::size_t k = 0; k < complement_.rows(); ++k)
        if (c->get(d + k)) out ^= complement_.row(k);
    return out;
}

BitMatrix LinearExtension::materialize() const {
    return BitMatrix::from_linear_map(s_, s_, [this](const BitVector& e) { return apply(e); });
}

BitMatrix linear_extension(const StateMap& sigma, const EmbeddingParams& p) {
    return LinearExtension::exhaustive(sigma, p).materialize();
}

std::optional<BitMatrix> brick_permutation_lift(const StateMap& sigma, const EmbeddingParams& p, std::size_t samples,
                                                std::uint64_t seed) {
    if (p.t() != 1) throw std::invalid_argument("brick permutation lift is defined for the parallel embedding");
    const unsigned m = p.m(), b = p.b();
    std::vector<unsigned> perm(b, b);
    std::vector<bool> used(b, false);
    for (unsigned j = 0; j < b; ++j) {
        for (Elem x = 1; x < p.field().size(); ++x) {
            BitVector v(p.r());
            v.set_bits(j * m, m, x);
            const BitVector y = sigma(v);
            unsigned target = b;
            for (unsigned k = 0; k < b; ++k) {
                const auto val = y.get_bits(k * m, m);
                if (val == 0) continue;
                if (target != b || val != x) return std::nullopt;
                target = k;
            }
            if (target == b || (perm[j] != b && perm[j] != target)) return std::nullopt;
            perm[j] = target;
        }
        if (used[perm[j]]) return std::nullopt;
        used[perm[j]] = true;
    }
    auto permute = [&](const BitVector& v) {
        BitVector y(p.r());
        for (unsigned j = 0; j < b; ++j) y.set_bits(perm[j] * m, m, v.get_bits(j * m, m));
        return y;
    };
    if (!sigma(BitVector(p.r())).is_zero()) return std::nullopt;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const BitVector v = rng.bits(p.r());
        if (sigma(v) != permute(v)) return std::nullopt;
    }
    BitMatrix lift(p.s(), p.s());
    const std::size_t q = p.block();
    for (unsigned j = 0; j < b; ++j)
        for (std::size_t c = 0; c < q; ++c) lift.set(perm[j] * q + c, j * q + c);
    return lift;
}

}  // namespace tbembed::embed
