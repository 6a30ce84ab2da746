#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "tbembed/extend.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::extend {

namespace {

using Quad = std::vector<BitVector>;

Quad sorted(Quad q) {
    std::sort(q.begin(), q.end(), [](const BitVector& a, const BitVector& b) { return a.lex_less(b); });
    return q;
}

bool quad_less(const Quad& a, const Quad& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].lex_less(b[k])) return true;
        if (b[k].lex_less(a[k])) return false;
    }
    return false;
}

struct PairSums {
    BitVector a, b;
    BitVector key, image_key;
};

// Pairs whose sums agree on one side must agree on the other.
void scan(const std::vector<PairSums>& pairs, bool forward, SExtendResult& res) {
    std::unordered_map<BitVector, std::vector<std::size_t>, algebra::BitVectorHash> groups;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        groups[forward ? pairs[i].key : pairs[i].image_key].push_back(i);
    for (const auto& [k, members] : groups) {
        for (std::size_t u = 0; u < members.size(); ++u)
            for (std::size_t v = u + 1; v < members.size(); ++v) {
                const auto& P = pairs[members[u]];
                const auto& Q = pairs[members[v]];
                const bool other_equal = forward ? P.image_key == Q.image_key : P.key == Q.key;
                if (other_equal) continue;
                Quad q = sorted({P.a, P.b, Q.a, Q.b});
                if (res.extendible || quad_less(q, res.witness)) {
                    res.extendible = false;
                    res.witness = std::move(q);
                    res.witness_forward = forward;
                }
            }
    }
}

SExtendResult two_extendible(const StateMap& sigma, const EmbeddingParams& p, const std::vector<BitVector>& states) {
    SExtendResult res;
    for (bool forward : {true, false}) {
        std::unordered_map<BitVector, BitVector, algebra::BitVectorHash> seen;
        for (const auto& v : states) {
            const BitVector key = forward ? embed::alpha(p, v) : embed::alpha(p, sigma(v));
            auto [it, fresh] = seen.emplace(key, v);
            if (fresh || it->second == v) continue;
            Quad q = sorted({it->second, v});
            if (res.extendible || quad_less(q, res.witness)) {
                res.extendible = false;
                res.witness = std::move(q);
                res.witness_forward = forward;
            }
        }
    }
    return res;
}

}  // namespace

SExtendResult is_s_extendible(const StateMap& sigma, const EmbeddingParams& p, unsigned s, const SExtendOptions& opt) {
    if (s != 2 && s != 4) throw std::invalid_argument("only s = 2 and s = 4 are supported");
    if (!opt.sampled && p.r() > (s == 4 ? 8u : 20u))
        throw std::invalid_argument("state space too large for exhaustive mode; use sampled mode");
    if (opt.sampled && opt.trials == 0) throw std::invalid_argument("sampled mode needs a positive trial count");

    std::vector<BitVector> states;
    if (opt.sampled) {
        SplitMix64 rng(opt.seed);
        for (std::size_t i = 0; i < (s == 2 ? opt.trials : 2 * opt.trials); ++i) states.push_back(rng.bits(p.r()));
    } else {
        states = embed::all_states(p);
    }

    SExtendResult res;
    if (s == 2) {
        res = two_extendible(sigma, p, states);
    } else {
        std::vector<PairSums> pairs;
        std::vector<BitVector> a_img, s_img;
        for (const auto& v : states) {
            a_img.push_back(embed::alpha(p, v));
            s_img.push_back(embed::alpha(p, sigma(v)));
        }
        if (opt.sampled) {
            for (std::size_t i = 0; i + 1 < states.size(); i += 2)
                pairs.push_back({states[i], states[i + 1], a_img[i] ^ a_img[i + 1], s_img[i] ^ s_img[i + 1]});
        } else {
            for (std::size_t i = 0; i < states.size(); ++i)
                for (std::size_t k = i; k < states.size(); ++k)
                    pairs.push_back({states[i], states[k], a_img[i] ^ a_img[k], s_img[i] ^ s_img[k]});
        }
        scan(pairs, true, res);
        scan(pairs, false, res);
    }
    res.exhaustive = !opt.sampled;
    return res;
}

StateMap table_map(std::size_t r, std::vector<std::uint64_t> table) {
    if (r > 20 || table.size() != (std::size_t{1} << r)) throw std::invalid_argument("table size must be 2^r");
    return [r, table = std::move(table)](const BitVector& v) { return BitVector::from_u64(r, table[v.to_u64()]); };
}

StateMap random_state_permutation(std::size_t r, std::uint64_t seed) {
    if (r > 20) throw std::invalid_argument("state space too large to tabulate");
    std::vector<std::uint64_t> table(std::size_t{1} << r);
    std::iota(table.begin(), table.end(), 0);
    SplitMix64 rng(seed);
    for (std::size_t i = table.size(); i > 1; --i) std::swap(table[i - 1], table[rng.below(i)]);
    return table_map(r, std::move(table));
}

}  // namespace tbembed::extend
