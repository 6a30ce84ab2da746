#include "tbembed/counterexamples.hpp"

#include "tbembed/ciphers.hpp"
#include "tbembed/linear_extension.hpp"

namespace tbembed::embed {

namespace {

CounterexampleReport run(const std::string& layer, const EmbeddingParams& p, const StateMap& lmap,
                         const std::vector<BitVector>& states, const std::vector<std::size_t>& blocks) {
    CounterexampleReport rep;
    rep.layer = layer;
    rep.states = states;
    rep.blocks = blocks;
    std::vector<BitVector> w, images;
    for (const auto& v : states) {
        w.push_back(eps(p, v));
        images.push_back(eps(p, lmap(v)));
    }
    rep.relation_holds = (w[0] ^ w[1] ^ w[2]) == w[3];
    for (const auto& img : images) {
        std::vector<std::size_t> pos;
        for (auto j : blocks) pos.push_back(*img.slice(j * p.block(), p.block()).lowest_set());
        rep.image_positions.push_back(pos);
    }
    const BitVector sum = images[0] ^ images[1] ^ images[2];
    for (unsigned j = 0; j < p.b(); ++j) {
        const std::size_t wt = sum.slice(j * p.block(), p.block()).weight();
        if (wt != 1) {
            rep.sum_is_admissible = false;
            if (wt > rep.offending_weight) {
                rep.offending_weight = wt;
                rep.offending_block = j;
            }
        }
    }
    rep.violation = sum != images[3];
    return rep;
}

}  // namespace

CounterexampleReport verify_mc_counterexample() {
    const EmbeddingParams p = aes_eps();
    const Elem g = p.field().primitive_element();
    auto state = [&](std::initializer_list<Elem> first_column) {
        ciphers::Bytes16 s{};
        std::size_t i = 0;
        for (Elem x : first_column) s[i++] = static_cast<std::uint8_t>(x);
        return ciphers::bytes_to_bits(s);
    };
    const std::vector<BitVector> states = {state({g, g, 0, 0}), state({g, 0, g, 0}), state({0, 0, g, 0}),
                                           state({0, g, 0, 0})};
    auto mc = [](const BitVector& v) { return ciphers::bytes_to_bits(ciphers::mixcolumns(ciphers::bits_to_bytes(v))); };
    return run("MixColumns", p, mc, states, {0, 1, 2, 3});
}

CounterexampleReport verify_player_counterexample() {
    const EmbeddingParams p = present_eps();
    const Elem zeta = 0xF;
    auto state = [&](std::initializer_list<Elem> bricks) {
        BitVector v(64);
        unsigned j = 0;
        for (Elem x : bricks) v.set_bits(4 * j++, 4, x);
        return v;
    };
    const std::vector<BitVector> states = {state({zeta, zeta, 0}), state({zeta, 0, zeta}), state({0, 0, zeta}),
                                           state({0, zeta, 0})};
    const BitMatrix pl = ciphers::mixing_layer_matrix(ciphers::Layer::present_player);
    auto player = [&](const BitVector& v) { return pl.apply(v); };
    return run("pLayer", p, player, states, {0, 4, 8, 12});
}

}  // namespace tbembed::embed
