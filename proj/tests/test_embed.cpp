#include <set>

#include "doctest.h"

#include "support.hpp"
#include "tbembed/counterexamples.hpp"
#include "tbembed/embedding.hpp"
#include "tbembed/field_matrix.hpp"

using namespace tbembed;
using namespace tbembed::embed;

namespace {

std::size_t exhaustive_dim(const EmbeddingParams& p) {
    return algebra::rank(build_D(p, all_states(p)));
}

}  // namespace

TEST_CASE("eps positions") {
    const FieldSpec f = FieldSpec::aes(0xFB);
    CHECK(eps_index(f, 0) == 0);
    CHECK(eps_index(f, 1) == 255);
    CHECK(eps_index(f, 0xFB) == 1);
    for (std::size_t i = 0; i < 256; ++i) CHECK(eps_index(f, eps_value(f, i)) == i);
    CHECK(eps_prime(f, 0xFB) == algebra::BitVector::unit(256, 1));
}

TEST_CASE("alpha is injective and admissible") {
    const auto p = testing::reduced_alpha();
    for (const auto& v : all_states(p)) {
        const BitVector w = alpha(p, v);
        CHECK(w.weight() == p.b() * p.t());
        REQUIRE(alpha_preimage(p, w));
        CHECK(*alpha_preimage(p, w) == v);
    }
    CHECK_FALSE(alpha_preimage(p, BitVector(p.s())));
}

TEST_CASE("dimension formulas") {
    CHECK(eps_dim_formula(8, 16) == 4081);
    CHECK(eps_dim_formula(4, 16) == 241);
    CHECK(eps_dim_formula(4, 32) == 481);
    CHECK(orbit_dim_formula(4, 16, 3) == 593);
    CHECK(orbit_dim_formula(8, 16, 8) == 31745);
}

TEST_CASE("published dimensions") {
    const std::pair<EmbeddingParams (*)(), std::size_t> cases[] = {
        {aes_eps, 4081}, {present_eps, 241}, {serpent_eps, 481}, {present_alpha, 593}};
    for (const auto& [params, want] : cases) {
        const auto space = admissible_dim(params());
        CHECK(space.dim == want);
        CHECK(space.exact);
        CHECK(space.basis.rows() == want);
    }
}

TEST_CASE("small dimensions agree with full enumeration") {
    const auto f = FieldSpec::standard(2);
    const auto p = testing::reduced_alpha();
    CHECK(exhaustive_dim(p) == 9);
    CHECK(admissible_dim(p).dim == 9);
    CHECK(orbit_dim_formula(2, 2, 2) == 9);

    // independent oracle: 8, below the closed-orbit formula
    const algebra::FieldMatrix upper(f, {{1, 1}, {0, 1}});
    const auto q = EmbeddingParams::orbit(f, 2, upper.to_binary(), 2);
    CHECK(exhaustive_dim(q) == 8);
    CHECK(admissible_dim(q).dim == 8);

    for (unsigned b = 1; b <= 4; ++b) {
        const auto e = EmbeddingParams::eps(FieldSpec::standard(3), b);
        CHECK(exhaustive_dim(e) == eps_dim_formula(3, b));
        CHECK(admissible_dim(e).dim == eps_dim_formula(3, b));
    }
}

TEST_CASE("dual relations annihilate every admissible vector") {
    const auto p = testing::reduced_alpha();
    const BitMatrix d = dual_relations(p);
    for (const auto& v : all_states(p))
        for (std::size_t i = 0; i < d.rows(); ++i) CHECK_FALSE(d.row(i).dot(alpha(p, v)));
    CHECK(p.s() - algebra::rank(d) >= exhaustive_dim(p));
    CHECK_THROWS(dual_relations(EmbeddingParams::eps(FieldSpec::standard(2), 2)));
}

TEST_CASE("orbit embedding needs a closed orbit") {
    const auto f = FieldSpec::standard(2);
    const BitMatrix M = algebra::FieldMatrix(f, {{1, 1}, {0, 1}}).to_binary();
    CHECK_THROWS(EmbeddingParams::orbit(f, 2, M, 3));
    CHECK_FALSE(EmbeddingParams::partial_orbit(f, 2, M, 3).closed());
}

TEST_CASE("MixColumns counterexample") {
    const auto r = verify_mc_counterexample();
    CHECK(r.relation_holds);
    const std::vector<std::vector<std::size_t>> want = {{1, 3, 0, 51}, {3, 51, 3, 51}, {1, 3, 51, 1}, {3, 51, 1, 1}};
    CHECK(r.image_positions == want);
    CHECK(r.violation);
    CHECK(r.offending_weight == 3);
}

TEST_CASE("pLayer counterexample") {
    const auto r = verify_player_counterexample();
    CHECK(r.relation_holds);
    CHECK(r.violation);
    CHECK(r.offending_block == 0);
    CHECK(r.offending_weight == 3);
    std::set<std::size_t> firsts;
    for (const auto& row : r.image_positions) {
        CHECK(row == std::vector<std::size_t>(4, row[0]));
        firsts.insert(row[0]);
    }
    CHECK(firsts.size() == 4);
}

TEST_CASE("linear extensions of the reduced cipher group") {
    const auto check = testing::check_reduced_extensions(2024);
    CHECK(check.maps == 67);
    CHECK(check.exact == check.maps);
    CHECK(check.invertible == check.maps);
    CHECK(check.pairs == 20);
    CHECK(check.homomorphic == 20);
}

TEST_CASE("non-extendible maps carry a witness") {
    const auto p = testing::reduced_alpha();
    std::vector<std::uint64_t> table(16);
    for (std::uint64_t x = 0; x < 16; ++x) table[x] = x;
    std::swap(table[1], table[2]);
    const StateMap sigma = [&](const BitVector& v) { return BitVector::from_u64(4, table[v.to_u64()]); };
    const auto res = check_linear_extendibility(sigma, p);
    REQUIRE_FALSE(res.extendible);
    BitVector lhs(p.s()), rhs(p.s());
    for (const auto& v : res.witness) {
        lhs ^= alpha(p, v);
        rhs ^= alpha(p, sigma(v));
    }
    CHECK(lhs.is_zero() != rhs.is_zero());
    CHECK_THROWS_AS(linear_extension(sigma, p), NotExtendible);
}

TEST_CASE("ShiftRows extends under eps") {
    const auto check = testing::check_shiftrows_extension(200, 7);
    CHECK(check.structured);
    CHECK(check.lift);
    CHECK(check.agree == 200);
    const StateMap mc = [](const BitVector& v) {
        return ciphers::bytes_to_bits(ciphers::mixcolumns(ciphers::bits_to_bytes(v)));
    };
    CHECK_FALSE(brick_permutation_lift(mc, aes_eps(), 10, 1));
}
