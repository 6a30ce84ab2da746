#include "tbembed/ciphers.hpp"

#include <bit>
#include <stdexcept>

#include "tbembed/field_matrix.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::ciphers {

namespace {

constexpr std::uint8_t kPresentSbox[16] = {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD,
                                           0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2};

constexpr unsigned kPresentP[64] = {0,  16, 32, 48, 1,  17, 33, 49, 2,  18, 34, 50, 3,  19, 35, 51,
                                    4,  20, 36, 52, 5,  21, 37, 53, 6,  22, 38, 54, 7,  23, 39, 55,
                                    8,  24, 40, 56, 9,  25, 41, 57, 10, 26, 42, 58, 11, 27, 43, 59,
                                    12, 28, 44, 60, 13, 29, 45, 61, 14, 30, 46, 62, 15, 31, 47, 63};

constexpr std::uint8_t kSerpentSbox[8][16] = {
    {3, 8, 15, 1, 10, 6, 5, 11, 14, 13, 4, 2, 7, 0, 9, 12},
    {15, 12, 2, 7, 9, 0, 5, 10, 1, 11, 14, 8, 6, 13, 3, 4},
    {8, 6, 7, 9, 3, 12, 10, 15, 13, 1, 14, 4, 0, 11, 5, 2},
    {0, 15, 11, 8, 12, 9, 6, 3, 13, 1, 2, 4, 10, 7, 5, 14},
    {1, 15, 8, 3, 12, 0, 11, 6, 2, 5, 4, 10, 9, 14, 7, 13},
    {15, 5, 2, 11, 4, 10, 9, 12, 0, 3, 14, 8, 13, 6, 7, 1},
    {7, 2, 12, 5, 8, 4, 6, 11, 14, 9, 1, 15, 13, 3, 10, 0},
    {1, 13, 15, 0, 14, 8, 2, 11, 7, 4, 12, 10, 9, 3, 5, 6},
};

// Rows of the affine matrix as displayed, row i gives output bit i and
// column j multiplies input bit j.
constexpr std::uint8_t kAesAffineRows[8] = {0b10001111, 0b11000111, 0b11100011, 0b11110001,
                                            0b11111000, 0b01111100, 0b00111110, 0b00011111};

std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(algebra::poly_mulmod(a, b, 0x11B));
}

std::vector<SBox> uniform(const SBox& s, unsigned b) { return std::vector<SBox>(b, s); }

SBox invert_sbox(const SBox& s) {
    SBox inv(s.size(), 0);
    std::vector<bool> seen(s.size(), false);
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        if (s[x] >= s.size() || seen[s[x]]) throw std::invalid_argument("brick table is not a permutation");
        seen[s[x]] = true;
        inv[s[x]] = x;
    }
    return inv;
}

KeySchedule split_schedule(std::size_t count, std::size_t bits) {
    return [count, bits](const BitVector& key) {
        std::vector<BitVector> out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(key.slice(i * bits, bits));
        return out;
    };
}

BitMatrix bit_permutation_matrix(unsigned n, const std::function<unsigned(unsigned)>& dest) {
    BitMatrix m(n, n);
    for (unsigned i = 0; i < n; ++i) m.set(dest(i), i);
    return m;
}

}  // namespace

TbCipherSpec::TbCipherSpec(std::string name, unsigned m, unsigned b, std::vector<std::vector<SBox>> bricks,
                           std::vector<BitMatrix> mixing, std::size_t key_bits, KeySchedule schedule)
    : name_(std::move(name)), m_(m), b_(b), bricks_(std::move(bricks)), mixing_(std::move(mixing)),
      key_bits_(key_bits), schedule_(std::move(schedule)) {
    if (m == 0 || m > 16 || b == 0) throw std::invalid_argument("brick width and count must be positive");
    if (bricks_.size() != mixing_.size()) throw std::invalid_argument("one mixing matrix per round is required");
    const std::size_t r = state_bits();
    for (const auto& round : bricks_) {
        if (round.size() != b) throw std::invalid_argument("each round needs b brick tables");
        std::vector<SBox> inv;
        for (const auto& s : round) {
            if (s.size() != (std::size_t{1} << m)) throw std::invalid_argument("brick table has wrong size");
            inv.push_back(invert_sbox(s));
        }
        inverse_bricks_.push_back(std::move(inv));
    }
    for (const auto& mx : mixing_) {
        if (mx.rows() != r || mx.cols() != r) throw std::invalid_argument("mixing matrix must be mb x mb");
        auto inv = algebra::inverse(mx);
        if (!inv) throw std::invalid_argument("mixing matrix is singular");
        inverse_mixing_.push_back(std::move(*inv));
    }
}

std::vector<BitVector> TbCipherSpec::round_keys(const BitVector& key) const {
    if (key.size() != key_bits_) throw std::invalid_argument(name_ + ": key length mismatch");
    auto keys = schedule_(key);
    if (keys.size() != rounds() + 1) throw std::logic_error(name_ + ": key schedule produced wrong count");
    return keys;
}

BitVector TbCipherSpec::apply_bricks(unsigned round, const BitVector& v) const {
    BitVector out(state_bits());
    for (unsigned j = 0; j < b_; ++j) out.set_bits(j * m_, m_, bricks_[round][j][v.get_bits(j * m_, m_)]);
    return out;
}

BitVector TbCipherSpec::encrypt_with_round_keys(const std::vector<BitVector>& rk, const BitVector& pt) const {
    if (pt.size() != state_bits()) throw std::invalid_argument(name_ + ": block length mismatch");
    if (rk.size() != rounds() + 1) throw std::invalid_argument(name_ + ": round key count mismatch");
    BitVector x = pt ^ rk[0];
    for (unsigned r = 0; r < rounds(); ++r) {
        x = mixing_[r].apply(apply_bricks(r, x));
        x ^= rk[r + 1];
    }
    return x;
}

BitVector TbCipherSpec::decrypt_with_round_keys(const std::vector<BitVector>& rk, const BitVector& ct) const {
    if (ct.size() != state_bits()) throw std::invalid_argument(name_ + ": block length mismatch");
    if (rk.size() != rounds() + 1) throw std::invalid_argument(name_ + ": round key count mismatch");
    BitVector x = ct;
    for (unsigned r = rounds(); r-- > 0;) {
        x ^= rk[r + 1];
        x = inverse_mixing_[r].apply(x);
        BitVector y(state_bits());
        for (unsigned j = 0; j < b_; ++j) y.set_bits(j * m_, m_, inverse_bricks_[r][j][x.get_bits(j * m_, m_)]);
        x = y;
    }
    return x ^ rk[0];
}

BitVector TbCipherSpec::encrypt(const BitVector& key, const BitVector& pt) const {
    return encrypt_with_round_keys(round_keys(key), pt);
}

BitVector TbCipherSpec::decrypt(const BitVector& key, const BitVector& ct) const {
    return decrypt_with_round_keys(round_keys(key), ct);
}

namespace {

std::uint8_t aes_sbox_eval(std::uint8_t x) {
    std::uint8_t inv = 1;
    if (x == 0) inv = 0;
    else
        for (int i = 0; i < 254; ++i) inv = gmul(inv, x);
    std::uint8_t y = 0;
    for (int i = 0; i < 8; ++i) {
        unsigned acc = 0;
        for (int j = 0; j < 8; ++j)
            if ((kAesAffineRows[i] >> (7 - j)) & 1) acc ^= (inv >> j) & 1u;
        y |= static_cast<std::uint8_t>(acc << i);
    }
    return y ^ 0x63;
}

}  // namespace

std::uint8_t aes_sbox(std::uint8_t x) {
    static const auto table = [] {
        std::array<std::uint8_t, 256> t{};
        for (unsigned i = 0; i < 256; ++i) t[i] = aes_sbox_eval(static_cast<std::uint8_t>(i));
        return t;
    }();
    return table[x];
}

std::uint8_t present_sbox(std::uint8_t x) {
    if (x >= 16) throw std::out_of_range("PRESENT S-box input must be a nibble");
    return kPresentSbox[x];
}

unsigned present_player_permutation(unsigned i) {
    if (i >= 64) throw std::out_of_range("pLayer bit index must be below 64");
    return kPresentP[i];
}

std::uint8_t serpent_sbox(unsigned which, std::uint8_t x) {
    if (which >= 8 || x >= 16) throw std::out_of_range("SERPENT S-box index or input out of range");
    return kSerpentSbox[which][x];
}

unsigned serpent_initial_permutation(unsigned i) {
    if (i >= 128) throw std::out_of_range("SERPENT bit index must be below 128");
    return (i % 4) * 32 + i / 4;
}

Bytes16 shiftrows(const Bytes16& s) {
    Bytes16 out{};
    for (unsigned c = 0; c < 4; ++c)
        for (unsigned r = 0; r < 4; ++r) out[r + 4 * c] = s[r + 4 * ((c + r) % 4)];
    return out;
}

Bytes16 mixcolumns(const Bytes16& s) {
    Bytes16 out{};
    for (unsigned c = 0; c < 4; ++c) {
        const std::uint8_t* a = &s[4 * c];
        for (unsigned r = 0; r < 4; ++r)
            out[4 * c + r] = static_cast<std::uint8_t>(gmul(2, a[r]) ^ gmul(3, a[(r + 1) % 4]) ^ a[(r + 2) % 4] ^
                                                       a[(r + 3) % 4]);
    }
    return out;
}

BitVector serpent_linear_transform(const BitVector& x) {
    if (x.size() != 128) throw std::invalid_argument("SERPENT state is 128 bits");
    std::uint32_t X[4] = {0, 0, 0, 0};
    for (unsigned j = 0; j < 32; ++j)
        for (unsigned w = 0; w < 4; ++w)
            if (x.get(4 * j + w)) X[w] |= 1u << j;
    X[0] = std::rotl(X[0], 13);
    X[2] = std::rotl(X[2], 3);
    X[1] ^= X[0] ^ X[2];
    X[3] ^= X[2] ^ (X[0] << 3);
    X[1] = std::rotl(X[1], 1);
    X[3] = std::rotl(X[3], 7);
    X[0] ^= X[1] ^ X[3];
    X[2] ^= X[3] ^ (X[1] << 7);
    X[0] = std::rotl(X[0], 5);
    X[2] = std::rotl(X[2], 22);
    BitVector y(128);
    for (unsigned j = 0; j < 32; ++j)
        for (unsigned w = 0; w < 4; ++w)
            if ((X[w] >> j) & 1) y.set(4 * j + w);
    return y;
}

BitVector bytes_to_bits(const Bytes16& s) {
    BitVector v(128);
    for (unsigned i = 0; i < 16; ++i) v.set_bits(8 * i, 8, s[i]);
    return v;
}

Bytes16 bits_to_bytes(const BitVector& v) {
    if (v.size() != 128) throw std::invalid_argument("expected a 128-bit block");
    Bytes16 s{};
    for (unsigned i = 0; i < 16; ++i) s[i] = static_cast<std::uint8_t>(v.get_bits(8 * i, 8));
    return s;
}

BitMatrix mixing_layer_matrix(Layer which) {
    switch (which) {
        case Layer::shift_rows:
            return BitMatrix::from_linear_map(128, 128, [](const BitVector& v) { return bytes_to_bits(shiftrows(bits_to_bytes(v))); });
        case Layer::mix_columns:
            return BitMatrix::from_linear_map(128, 128, [](const BitVector& v) { return bytes_to_bits(mixcolumns(bits_to_bytes(v))); });
        case Layer::aes_full:
            return mixing_layer_matrix(Layer::mix_columns) * mixing_layer_matrix(Layer::shift_rows);
        case Layer::present_player:
            return bit_permutation_matrix(64, present_player_permutation);
        case Layer::serpent:
            return BitMatrix::from_linear_map(128, 128, serpent_linear_transform);
    }
    throw std::invalid_argument("unknown mixing layer");
}

std::vector<BitVector> key_schedule_aes128(const BitVector& key) {
    if (key.size() != 128) throw std::invalid_argument("AES-128 key must be 128 bits");
    std::array<std::array<std::uint8_t, 4>, 44> w{};
    for (unsigned i = 0; i < 16; ++i) w[i / 4][i % 4] = static_cast<std::uint8_t>(key.get_bits(8 * i, 8));
    std::uint8_t rcon = 1;
    for (unsigned i = 4; i < 44; ++i) {
        auto t = w[i - 1];
        if (i % 4 == 0) {
            t = {aes_sbox(t[1]), aes_sbox(t[2]), aes_sbox(t[3]), aes_sbox(t[0])};
            t[0] ^= rcon;
            rcon = gmul(rcon, 2);
        }
        for (unsigned k = 0; k < 4; ++k) w[i][k] = w[i - 4][k] ^ t[k];
    }
    std::vector<BitVector> out;
    for (unsigned r = 0; r < 11; ++r) {
        BitVector rk(128);
        for (unsigned i = 0; i < 16; ++i) rk.set_bits(8 * i, 8, w[4 * r + i / 4][i % 4]);
        out.push_back(rk);
    }
    return out;
}

std::vector<BitVector> key_schedule_present80(const BitVector& key) {
    if (key.size() != 80) throw std::invalid_argument("PRESENT-80 key must be 80 bits");
    using u128 = unsigned __int128;
    const u128 mask80 = (u128{1} << 80) - 1;
    u128 reg = (u128{key.get_bits(64, 16)} << 64) | key.get_bits(0, 64);
    std::vector<BitVector> out;
    for (unsigned i = 1; i <= 32; ++i) {
        out.push_back(BitVector::from_u64(64, static_cast<std::uint64_t>(reg >> 16)));
        if (i == 32) break;
        reg = ((reg << 61) | (reg >> 19)) & mask80;
        const auto top = static_cast<std::uint8_t>((reg >> 76) & 0xF);
        reg = (reg & ~(u128{0xF} << 76)) | (u128{kPresentSbox[top]} << 76);
        reg ^= u128{i} << 15;
    }
    return out;
}

std::vector<BitVector> independent_round_keys(std::size_t count, std::size_t bits, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<BitVector> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(rng.bits(bits));
    return out;
}

BitVector from_be_hex(const std::string& hex, std::size_t bits) {
    if (hex.size() * 4 < bits) throw std::invalid_argument("hex string too short");
    BitVector v(bits);
    for (std::size_t k = 0; k < hex.size(); ++k) {
        const char c = hex[hex.size() - 1 - k];
        unsigned d;
        if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
        else throw std::invalid_argument("bad hex digit");
        for (unsigned t = 0; t < 4; ++t) {
            if (!((d >> t) & 1)) continue;
            if (4 * k + t >= bits) throw std::invalid_argument("hex value exceeds bit length");
            v.set(4 * k + t);
        }
    }
    return v;
}

std::string to_be_hex(const BitVector& v) {
    static const char* digits = "0123456789abcdef";
    const std::size_t nibbles = (v.size() + 3) / 4;
    std::string s(nibbles, '0');
    for (std::size_t k = 0; k < nibbles; ++k) {
        const std::size_t pos = 4 * k;
        s[nibbles - 1 - k] = digits[v.get_bits(pos, std::min<std::size_t>(4, v.size() - pos))];
    }
    return s;
}

bool is_proper_mixing(const BitMatrix& lambda, unsigned m, unsigned b) {
    if (lambda.rows() != std::size_t{m} * b || lambda.cols() != lambda.rows())
        throw std::invalid_argument("mixing matrix size does not match brick layout");
    std::vector<std::uint64_t> reach(b, 0);
    for (unsigned j = 0; j < b; ++j)
        for (unsigned k = 0; k < m; ++k)
            for (std::size_t row = 0; row < lambda.rows(); ++row)
                if (lambda.get(row, j * m + k)) reach[j] |= std::uint64_t{1} << (row / m);
    if (b <= 20) {
        const std::uint64_t full = (std::uint64_t{1} << b) - 1;
        for (std::uint64_t s = 1; s < full; ++s) {
            std::uint64_t image = 0;
            for (unsigned j = 0; j < b; ++j)
                if ((s >> j) & 1) image |= reach[j];
            if ((image & ~s) == 0) return false;
        }
        return true;
    }
    // an invariant set contains the closure of each of its bricks
    for (unsigned j = 0; j < b; ++j) {
        std::uint64_t closure = std::uint64_t{1} << j, prev = 0;
        while (closure != prev) {
            prev = closure;
            for (unsigned k = 0; k < b; ++k)
                if ((closure >> k) & 1) closure |= reach[k];
        }
        if (std::popcount(closure) != static_cast<int>(b)) return false;
    }
    return true;
}

TbCipherSpec aes128() {
    SBox s(256);
    for (unsigned x = 0; x < 256; ++x) s[x] = aes_sbox(static_cast<std::uint8_t>(x));
    const BitMatrix full = mixing_layer_matrix(Layer::aes_full);
    const BitMatrix sr = mixing_layer_matrix(Layer::shift_rows);
    std::vector<std::vector<SBox>> bricks(10, uniform(s, 16));
    std::vector<BitMatrix> mixing(9, full);
    mixing.push_back(sr);
    return TbCipherSpec("aes128", 8, 16, std::move(bricks), std::move(mixing), 128, key_schedule_aes128);
}

TbCipherSpec present80() {
    SBox s(kPresentSbox, kPresentSbox + 16);
    const BitMatrix p = mixing_layer_matrix(Layer::present_player);
    return TbCipherSpec("present80", 4, 16, std::vector<std::vector<SBox>>(31, uniform(s, 16)),
                        std::vector<BitMatrix>(31, p), 80, key_schedule_present80);
}

TbCipherSpec reduced_cipher(unsigned m, unsigned b, unsigned rounds) {
    if (b < 2) throw std::invalid_argument("reduced cipher needs at least two bricks");
    const auto field = algebra::FieldSpec::standard(m);
    SBox s(field.size());
    for (std::uint32_t x = 0; x < field.size(); ++x) s[x] = field.inv_patched(x);
    const std::vector<algebra::Elem> first = {2, 3, 1, 1};
    algebra::FieldMatrix circ(field, b);
    for (unsigned i = 0; i < b; ++i)
        for (unsigned k = 0; k < std::min<unsigned>(b, 4); ++k) circ.set(i, (i + k) % b, first[k]);
    if (circ.determinant() == 0)
        throw std::invalid_argument("circulant mixing is singular for these parameters");
    const std::size_t bits = std::size_t{m} * b;
    return TbCipherSpec("reduced-m" + std::to_string(m) + "-b" + std::to_string(b) + "-r" + std::to_string(rounds), m, b,
                        std::vector<std::vector<SBox>>(rounds, uniform(s, b)),
                        std::vector<BitMatrix>(rounds, circ.to_binary()), (rounds + 1) * bits,
                        split_schedule(rounds + 1, bits));
}

TbCipherSpec identity_cipher(unsigned m, unsigned b, unsigned rounds) {
    SBox s(std::size_t{1} << m);
    for (std::uint32_t x = 0; x < s.size(); ++x) s[x] = x;
    const std::size_t bits = std::size_t{m} * b;
    return TbCipherSpec("identity", m, b, std::vector<std::vector<SBox>>(rounds, uniform(s, b)),
                        std::vector<BitMatrix>(rounds, BitMatrix::identity(bits)), (rounds + 1) * bits,
                        split_schedule(rounds + 1, bits));
}

}  // namespace tbembed::ciphers
