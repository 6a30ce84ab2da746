#include "doctest.h"

#include "tbembed/ciphers.hpp"
#include "tbembed/matrix_order.hpp"
#include "tbembed/rng.hpp"

using namespace tbembed;
using namespace tbembed::ciphers;

TEST_CASE("AES-128 known answers") {
    const auto spec = aes128();
    const auto vectors = load_test_vectors(TBEMBED_TEST_DATA "/aes128_kat.txt", spec);
    REQUIRE(vectors.size() == 2);
    for (const auto& v : vectors) {
        CHECK(spec.encrypt(v.key, v.plaintext) == v.ciphertext);
        CHECK(spec.decrypt(v.key, v.ciphertext) == v.plaintext);
    }
}

TEST_CASE("PRESENT-80 known answers") {
    const auto spec = present80();
    const auto vectors = load_test_vectors(TBEMBED_TEST_DATA "/present80_kat.txt", spec);
    REQUIRE(vectors.size() == 4);
    for (const auto& v : vectors) {
        CHECK(to_be_hex(spec.encrypt(v.key, v.plaintext)) == to_be_hex(v.ciphertext));
        CHECK(spec.decrypt(v.key, v.ciphertext) == v.plaintext);
    }
}

TEST_CASE("decryption inverts encryption") {
    SplitMix64 rng(77);
    for (const auto& spec : {aes128(), present80(), reduced_cipher(4, 4, 5), reduced_cipher(2, 2, 3)})
        for (int i = 0; i < 50; ++i) {
            const BitVector k = rng.bits(spec.key_bits()), p = rng.bits(spec.state_bits());
            CHECK(spec.decrypt(k, spec.encrypt(k, p)) == p);
        }
}

TEST_CASE("S-box and layer spot values") {
    CHECK(aes_sbox(0x00) == 0x63);
    CHECK(aes_sbox(0x53) == 0xED);
    CHECK(present_sbox(0x0) == 0xC);
    CHECK(present_sbox(0xF) == 0x2);
    CHECK(present_player_permutation(1) == 16);
    CHECK(present_player_permutation(63) == 63);
    CHECK(serpent_sbox(0, 0) == 3);
    // FIPS-197 C.1 round 1: MixColumns column d4 bf 5d 30 -> 04 66 81 e5
    Bytes16 s{};
    s[0] = 0xd4, s[1] = 0xbf, s[2] = 0x5d, s[3] = 0x30;
    const Bytes16 t = mixcolumns(s);
    CHECK(t[0] == 0x04);
    CHECK(t[1] == 0x66);
    CHECK(t[2] == 0x81);
    CHECK(t[3] == 0xe5);
}

TEST_CASE("layer matrices match the functions") {
    SplitMix64 rng(5);
    const BitMatrix mc = mixing_layer_matrix(Layer::mix_columns);
    const BitMatrix sl = mixing_layer_matrix(Layer::serpent);
    for (int i = 0; i < 20; ++i) {
        const BitVector x = rng.bits(128);
        CHECK(mc.apply(x) == bytes_to_bits(mixcolumns(bits_to_bytes(x))));
        CHECK(sl.apply(x) == serpent_linear_transform(x));
    }
}

TEST_CASE("mixing layers are proper") {
    CHECK(is_proper_mixing(mixing_layer_matrix(Layer::aes_full), 8, 16));
    CHECK(is_proper_mixing(mixing_layer_matrix(Layer::present_player), 4, 16));
    CHECK_FALSE(is_proper_mixing(BitMatrix::identity(128), 8, 16));
}

TEST_CASE("reduced cipher validation") {
    const auto spec = reduced_cipher(2, 2, 3);
    CHECK(spec.key_bits() == 16);
    CHECK(spec.rounds() == 3);
    CHECK(spec.name() == "reduced-m2-b2-r3");
    const auto id = identity_cipher(2, 2, 1);
    const BitVector zero(id.key_bits());
    CHECK(id.encrypt(zero, BitVector::from_u64(4, 9)).to_u64() == 9);
}
