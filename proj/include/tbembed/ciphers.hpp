#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tbembed/bit_matrix.hpp"
#include "tbembed/field.hpp"

namespace tbembed::ciphers {

using algebra::BitMatrix;
using algebra::BitVector;
using SBox = std::vector<std::uint32_t>;
using KeySchedule = std::function<std::vector<BitVector>(const BitVector&)>;
using Bytes16 = std::array<std::uint8_t, 16>;

// A translation-based cipher: x ^= k0, then for each round
// bricks, mixing matrix, round key.
class TbCipherSpec {
public:
    TbCipherSpec(std::string name, unsigned m, unsigned b, std::vector<std::vector<SBox>> bricks,
                 std::vector<BitMatrix> mixing, std::size_t key_bits, KeySchedule schedule);

    const std::string& name() const { return name_; }
    unsigned m() const { return m_; }
    unsigned b() const { return b_; }
    unsigned rounds() const { return static_cast<unsigned>(bricks_.size()); }
    std::size_t state_bits() const { return std::size_t{m_} * b_; }
    std::size_t key_bits() const { return key_bits_; }

    const SBox& brick(unsigned round, unsigned j) const { return bricks_.at(round).at(j); }
    const BitMatrix& mixing(unsigned round) const { return mixing_.at(round); }

    std::vector<BitVector> round_keys(const BitVector& key) const;
    BitVector encrypt(const BitVector& key, const BitVector& pt) const;
    BitVector decrypt(const BitVector& key, const BitVector& ct) const;
    BitVector encrypt_with_round_keys(const std::vector<BitVector>& round_keys, const BitVector& pt) const;
    BitVector decrypt_with_round_keys(const std::vector<BitVector>& round_keys, const BitVector& ct) const;

    BitVector apply_bricks(unsigned round, const BitVector& v) const;

private:
    std::string name_;
    unsigned m_, b_;
    std::vector<std::vector<SBox>> bricks_;
    std::vector<std::vector<SBox>> inverse_bricks_;
    std::vector<BitMatrix> mixing_;
    std::vector<BitMatrix> inverse_mixing_;
    std::size_t key_bits_;
    KeySchedule schedule_;
};

TbCipherSpec aes128();
TbCipherSpec present80();
// m-bit patched inversion bricks, circulant (x, x+1, 1, 1, 0, ...) mixing
// over GF(2^m), independent round keys taken from a (rounds+1)*m*b bit key.
TbCipherSpec reduced_cipher(unsigned m, unsigned b, unsigned rounds);
TbCipherSpec identity_cipher(unsigned m, unsigned b, unsigned rounds);

std::uint8_t aes_sbox(std::uint8_t x);
std::uint8_t present_sbox(std::uint8_t x);
unsigned present_player_permutation(unsigned i);
std::uint8_t serpent_sbox(unsigned which, std::uint8_t x);
unsigned serpent_initial_permutation(unsigned i);

Bytes16 shiftrows(const Bytes16& s);
Bytes16 mixcolumns(const Bytes16& s);
BitVector serpent_linear_transform(const BitVector& x);

enum class Layer { shift_rows, mix_columns, aes_full, present_player, serpent };
BitMatrix mixing_layer_matrix(Layer which);

std::vector<BitVector> key_schedule_aes128(const BitVector& key);
std::vector<BitVector> key_schedule_present80(const BitVector& key);
std::vector<BitVector> independent_round_keys(std::size_t count, std::size_t bits, std::uint64_t seed);

BitVector bytes_to_bits(const Bytes16& s);
Bytes16 bits_to_bytes(const BitVector& v);
// Hex read as one big-endian integer; bit i is bit i of that integer.
BitVector from_be_hex(const std::string& hex, std::size_t bits);
std::string to_be_hex(const BitVector& v);

// True when no nonempty proper sum of bricks is mapped into itself.
bool is_proper_mixing(const BitMatrix& lambda, unsigned m, unsigned b);

struct TestVector {
    BitVector key, plaintext, ciphertext;
};

// Lines "key plaintext ciphertext" in hex, '#' starts a comment. AES vectors
// use byte order, PRESENT vectors are big-endian integers.
std::vector<TestVector> load_test_vectors(const std::string& path, const TbCipherSpec& spec);

}  // namespace tbembed::ciphers
