#include "tbembed/field.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace tbembed::algebra {

namespace {

std::uint32_t poly_mod(std::uint64_t a, std::uint32_t p) {
    const int dp = static_cast<int>(std::bit_width(p)) - 1;
    for (int d = static_cast<int>(std::bit_width(a)) - 1; d >= dp; d = static_cast<int>(std::bit_width(a)) - 1)
        a ^= static_cast<std::uint64_t>(p) << (d - dp);
    return static_cast<std::uint32_t>(a);
}

std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
    std::uint64_t r = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1) r ^= static_cast<std::uint64_t>(a) << i;
    return r;
}

constexpr std::uint32_t standard_polys[17] = {0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D,
                                               0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

}  // namespace

Elem poly_mulmod(Elem a, Elem b, std::uint32_t poly) {
    return poly_mod(clmul(a, b), poly);
}

bool is_irreducible(std::uint32_t poly, unsigned m) {
    if (m == 0 || m > 16) return false;
    if (static_cast<unsigned>(31 - std::countl_zero(poly)) != m) return false;
    // trial division by every polynomial of degree 1..m/2
    for (std::uint32_t d = 2; d < (1u << (m / 2 + 1)); ++d)
        if (poly_mod(poly, d) == 0) return false;
    return true;
}

FieldSpec::FieldSpec(unsigned m, std::uint32_t poly, std::optional<Elem> primitive) : m_(m), poly_(poly), gen_(0) {
    if (m < 1 || m > 16) throw std::invalid_argument("field degree must be in [1,16]");
    if (!is_irreducible(poly, m))
        throw std::invalid_argument("polynomial " + std::to_string(poly) + " is not irreducible of degree " +
                                    std::to_string(m));
    const std::uint32_t q = 1u << m;
    auto order_is_full = [&](Elem g) {
        if (g == 0 || g >= q) return false;
        Elem x = 1;
        for (std::uint32_t i = 1; i < q - 1; ++i) {
            x = poly_mulmod(x, g, poly_);
            if (x == 1) return false;
        }
        return m_ == 1 || poly_mulmod(x, g, poly_) == 1;
    };
    if (primitive) {
        if (!order_is_full(*primitive))
            throw std::invalid_argument("element " + std::to_string(*primitive) + " is not primitive");
        gen_ = *primitive;
    } else {
        for (Elem g = m == 1 ? 1 : 2; g < q; ++g)
            if (order_is_full(g)) {
                gen_ = g;
                break;
            }
    }
    log_.assign(q, 0);
    antilog_.assign(q - 1, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        antilog_[i] = x;
        log_[x] = i;
        x = poly_mulmod(x, gen_, poly_);
    }
}

FieldSpec FieldSpec::standard(unsigned m) {
    if (m < 2 || m > 16) throw std::invalid_argument("standard field degree must be in [2,16]");
    return FieldSpec(m, standard_polys[m], 2);
}

FieldSpec FieldSpec::aes(std::optional<Elem> primitive) { return FieldSpec(8, 0x11B, primitive); }

Elem FieldSpec::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint32_t s = log_[a] + log_[b];
    return antilog_[s % (size() - 1)];
}

Elem FieldSpec::inv_patched(Elem a) const {
    if (a == 0) return 0;
    return antilog_[(size() - 1 - log_[a]) % (size() - 1)];
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return antilog_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (size() - 1))) % (size() - 1))];
}

std::uint32_t FieldSpec::dlog(Elem a) const {
    if (a == 0) throw std::domain_error("discrete log of zero");
    if (a >= size()) throw std::out_of_range("element outside the field");
    return log_[a];
}

}  // namespace tbembed::algebra
