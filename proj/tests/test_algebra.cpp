#include "doctest.h"

#include "tbembed/bit_matrix.hpp"
#include "tbembed/field.hpp"
#include "tbembed/field_matrix.hpp"
#include "tbembed/gf2_poly.hpp"
#include "tbembed/matrix_order.hpp"
#include "tbembed/rng.hpp"

using namespace tbembed;
using namespace tbembed::algebra;

namespace {

BitMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    SplitMix64 rng(seed);
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) m.set_row(i, rng.bits(c));
    return m;
}

}  // namespace

TEST_CASE("bit vector basics") {
    BitVector v = BitVector::from_string("1011");
    CHECK(v.size() == 4);
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.weight() == 3);
    CHECK(v.to_u64() == 0b1101);
    CHECK(v.lowest_set() == 0u);
    CHECK(BitVector(70).lowest_set() == std::nullopt);
    v.set_bits(1, 2, 0b11);
    CHECK(v.to_string() == "1111");
    CHECK(v.slice(1, 2).to_u64() == 3);
    CHECK(BitVector::unit(5, 3).concat(BitVector::unit(2, 0)).to_string() == "0001010");
    CHECK(BitVector::from_hex(v.to_hex(), 4) == v);
}

TEST_CASE("matrix product, transpose and apply agree") {
    const BitMatrix a = random_matrix(70, 90, 1), b = random_matrix(90, 65, 2);
    const BitVector x = SplitMix64(3).bits(65);
    CHECK((a * b).apply(x) == a.apply(b.apply(x)));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.left_apply(SplitMix64(4).bits(70)) == a.transpose().apply(SplitMix64(4).bits(70)));
    CHECK(BitMatrix::identity(90) * b == b);
}

TEST_CASE("rank methods agree") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t r = 1 + seed * 13 % 150, c = 1 + seed * 29 % 170;
        BitMatrix m = random_matrix(r, c, seed);
        if (seed % 3 == 0 && r > 2) m.set_row(r - 1, m.row(0) ^ m.row(1));
        CHECK(rank(m) == rank(m, RankMethod::four_russians));
        CHECK(rank(m) == rank_m4ri(m, 4));
        CHECK(rank(m) == independent_rows(m).size());
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("small rank oracles") {
    CHECK(rank(BitMatrix::from_strings({"11", "11"})) == 1);
    CHECK(rank(BitMatrix::from_strings({"10", "01"})) == 2);
    CHECK(rank(BitMatrix(0, 5)) == 0);
    CHECK(rank(BitMatrix(4, 4)) == 0);
    CHECK(rank(BitMatrix::identity(200), RankMethod::four_russians) == 200);
}

TEST_CASE("independent rows point at original indices") {
    const BitMatrix m = BitMatrix::from_strings({"000", "110", "110", "011", "101", "001"});
    const auto idx = independent_rows(m);
    CHECK(idx == std::vector<std::size_t>{1, 3, 5});
    CHECK(independent_rows(m, RankMethod::four_russians).size() == 3);
}

TEST_CASE("kernel, inverse and completion") {
    const BitMatrix m = random_matrix(40, 30, 9);
    const BitMatrix k = kernel_basis(m);
    CHECK(k.rows() == 40 - rank(m));
    for (std::size_t i = 0; i < k.rows(); ++i) CHECK(m.left_apply(k.row(i)).is_zero());

    SplitMix64 rng(5);
    BitMatrix sq = random_matrix(33, 33, 11);
    while (rank(sq) != 33) sq = random_matrix(33, 33, rng());
    const auto inv = inverse(sq);
    REQUIRE(inv);
    CHECK((sq * *inv).is_identity());
    CHECK_FALSE(inverse(BitMatrix(3, 3)));

    const BitMatrix sub = random_matrix(10, 64, 12);
    const BitMatrix comp = complete_to_basis(sub, 64);
    CHECK(comp.rows() == 64 - rank(sub));
    CHECK(rank(sub.vstack(comp)) == 64);
    CHECK_THROWS_AS(complete_to_basis(sub.vstack(sub), 64), std::invalid_argument);
}

TEST_CASE("span solver expresses vectors over inserted ones") {
    SpanSolver s(20);
    std::vector<BitVector> inserted;
    SplitMix64 rng(21);
    for (int i = 0; i < 12; ++i) {
        const BitVector v = rng.bits(20);
        if (s.insert(v)) inserted.push_back(v);
    }
    CHECK(s.dim() == inserted.size());
    const BitVector target = inserted[0] ^ inserted[3] ^ inserted[5];
    const auto c = s.solve(target);
    REQUIRE(c);
    BitVector sum(20);
    for (std::size_t k = 0; k < inserted.size(); ++k)
        if (c->get(k)) sum ^= inserted[k];
    CHECK(sum == target);
}

TEST_CASE("polynomials over F2") {
    const Gf2Poly a = Gf2Poly::from_u64(0b1011), b = Gf2Poly::from_u64(0b11);
    CHECK((a * b) == Gf2Poly::from_u64(0b11101));
    CHECK(((a * b) % b).is_zero());
    CHECK(((a * b) / b) == a);
    CHECK(gcd(a * b, b * b) == b);
    // x^15 - 1 = (x+1)(x^2+x+1)(x^4+x+1)(x^4+x^3+1)(x^4+x^3+x^2+x+1)
    CHECK(irreducible_factor_degrees(Gf2Poly::monomial(15) + Gf2Poly::from_u64(1)) ==
          std::vector<std::size_t>{1, 2, 4});
    CHECK(irreducible_factor_degrees(Gf2Poly::from_u64(0b1011)) == std::vector<std::size_t>{3});
}

TEST_CASE("finite fields") {
    const FieldSpec aes = FieldSpec::aes();
    CHECK(aes.mul(0x57, 0x83) == 0xC1);
    CHECK(poly_mulmod(0x57, 0x13, 0x11B) == 0xFE);
    for (Elem x = 1; x < 256; ++x) CHECK(aes.mul(x, aes.inv_patched(x)) == 1);
    CHECK(aes.inv_patched(0) == 0);
    const FieldSpec g = FieldSpec::aes(0xFB);
    CHECK(g.exp(g.dlog(0x1F)) == 0x1F);
    CHECK_THROWS(FieldSpec(8, 0x11B, 0x02));  // 2 has order 51 in the AES field
    CHECK(is_irreducible(0x13, 4));
    CHECK_FALSE(is_irreducible(0x15, 4));
    CHECK_THROWS(FieldSpec(4, 0x15));
    const FieldSpec f4(2, 0x7);
    CHECK(f4.mul(2, 2) == 3);
    CHECK_THROWS(f4.dlog(0));
}

TEST_CASE("matrices over GF(2^m)") {
    const FieldSpec f(2, 0x7);
    const FieldMatrix m(f, {{1, 2}, {2, 1}});
    CHECK(m.determinant() == 2);
    CHECK(m.all_proper_minors_nonzero());
    CHECK_FALSE(FieldMatrix(f, {{1, 1}, {0, 1}}).all_proper_minors_nonzero());
    const BitMatrix bin = m.to_binary();
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            const auto y = m.apply({a, b});
            const BitVector x = BitVector::from_u64(4, a | (b << 2));
            CHECK(bin.apply(x).to_u64() == (y[0] | (y[1] << 2)));
        }
}

TEST_CASE("matrix orders") {
    BitMatrix cyc(5, 5);
    for (std::size_t i = 0; i < 5; ++i) cyc.set((i + 1) % 5, i);
    CHECK(matrix_order(cyc, 100) == 5u);
    CHECK(matrix_order_exact(cyc) == 5);
    CHECK(matrix_order(BitMatrix::identity(3), 10) == 1u);
    CHECK_THROWS_AS(matrix_order(BitMatrix(2, 2), 10), std::domain_error);
    // companion matrix of a primitive degree-7 polynomial has order 127
    BitMatrix comp(7, 7);
    for (std::size_t i = 1; i < 7; ++i) comp.set(i, i - 1);
    comp.set(0, 6);
    comp.set(1, 6);
    CHECK(matrix_order_exact(comp) == 127);
    CHECK(matrix_order(comp, 100) == std::nullopt);
}

TEST_CASE("factorization") {
    const BigInt n("340282366920938463463374607431768211455");  // 2^128 - 1
    const auto f = factorize(n);
    BigInt prod = 1;
    for (const auto& [p, e] : f) {
        CHECK(is_probable_prime(p));
        for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
    CHECK(f.size() == 9);
}
