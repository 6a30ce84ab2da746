#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbembed/ciphers.hpp"
#include "tbembed/linear_extension.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::testing {

using algebra::BitMatrix;
using algebra::BitVector;
using embed::EmbeddingParams;
using embed::StateMap;

struct NamedMap {
    std::string name;
    StateMap map;
};

// Orbit embedding of the m=2, b=2 reduced cipher, t = 2.
inline EmbeddingParams reduced_alpha() {
    const auto spec = ciphers::reduced_cipher(2, 2, 1);
    return EmbeddingParams::orbit(algebra::FieldSpec::standard(2), 2, spec.mixing(0), 2);
}

// v -> a v + c with one nonzero scalar a for every brick.
inline StateMap parallel_affine(const EmbeddingParams& p, algebra::Elem a, const BitVector& c) {
    return [p, a, c](const BitVector& v) {
        BitVector y(p.r());
        for (unsigned j = 0; j < p.b(); ++j)
            y.set_bits(j * p.m(), p.m(), p.field().mul(a, static_cast<algebra::Elem>(v.get_bits(j * p.m(), p.m()))));
        return y ^ c;
    };
}

// 50 random parallel affine maps, every translation and M.
inline std::vector<NamedMap> extension_pool(const EmbeddingParams& p, std::uint64_t seed) {
    std::vector<NamedMap> pool;
    SplitMix64 rng(seed);
    for (int i = 0; i < 50; ++i) {
        const auto a = static_cast<algebra::Elem>(1 + rng.below(p.field().size() - 1));
        const BitVector c = rng.bits(p.r());
        pool.push_back({"affine a=" + std::to_string(a) + " c=" + c.to_hex(), parallel_affine(p, a, c)});
    }
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << p.r()); ++c) {
        const BitVector t = BitVector::from_u64(p.r(), c);
        pool.push_back({"translation " + t.to_hex(), [t](const BitVector& v) { return v ^ t; }});
    }
    const BitMatrix M = p.mixing();
    pool.push_back({"M", [M](const BitVector& v) { return M.apply(v); }});
    return pool;
}

struct ExtensionCheck {
    std::size_t maps = 0, exact = 0, invertible = 0;
    std::size_t pairs = 0, homomorphic = 0;
    bool ok() const { return maps > 0 && exact == maps && invertible == maps && homomorphic == pairs; }
};

inline ExtensionCheck check_reduced_extensions(std::uint64_t seed) {
    const auto p = reduced_alpha();
    const auto pool = extension_pool(p, seed);
    const auto states = embed::all_states(p);
    ExtensionCheck out;
    std::vector<BitMatrix> A;
    for (const auto& f : pool) {
        A.push_back(embed::linear_extension(f.map, p));
        ++out.maps;
        bool exact = true;
        for (const auto& v : states) exact = exact && A.back().apply(embed::alpha(p, v)) == embed::alpha(p, f.map(v));
        out.exact += exact;
        out.invertible += algebra::inverse(A.back()).has_value();
    }
    SplitMix64 rng(SplitMix64::derive(seed, 1));
    for (int i = 0; i < 20; ++i) {
        const auto s = rng.below(pool.size()), t = rng.below(pool.size());
        const StateMap st = [&, s, t](const BitVector& v) { return pool[s].map(pool[t].map(v)); };
        ++out.pairs;
        out.homomorphic += embed::linear_extension(st, p) == A[s] * A[t];
    }
    return out;
}

inline BitVector shiftrows_bits(const BitVector& v) {
    return ciphers::bytes_to_bits(ciphers::shiftrows(ciphers::bits_to_bytes(v)));
}

struct ShiftRowsCheck {
    bool structured = false;
    bool lift = false;
    std::size_t samples = 0, agree = 0;
    bool ok() const { return structured && lift && agree == samples; }
};

// ShiftRows under eps on AES: structured extension from single-brick states,
// compared with the block permutation lift on random states.
inline ShiftRowsCheck check_shiftrows_extension(std::size_t samples, std::uint64_t seed) {
    const auto p = embed::aes_eps();
    ShiftRowsCheck out;
    const StateMap sr = shiftrows_bits;
    try {
        const auto ext = embed::LinearExtension::structured(sr, p, embed::single_brick_states(p), samples, seed);
        out.structured = true;
        const auto lift = embed::brick_permutation_lift(sr, p, samples, seed);
        out.lift = lift.has_value();
        SplitMix64 rng(SplitMix64::derive(seed, 2));
        for (std::size_t i = 0; i < samples; ++i) {
            const BitVector v = rng.bits(p.r());
            const BitVector want = embed::alpha(p, sr(v));
            const BitVector a = embed::alpha(p, v);
            ++out.samples;
            out.agree += ext.apply(a) == want && (!lift || lift->apply(a) == want);
        }
    } catch (const embed::NotExtendible&) {
    }
    return out;
}

}  // namespace tbembed::testing
