#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tbembed::algebra {

using Elem = std::uint32_t;

// GF(2^m), bit i of an element is the coefficient of x^i.
class FieldSpec {
public:
    // Throws when poly is not irreducible of degree m, or when the supplied
    // primitive element does not generate the multiplicative group.
    FieldSpec(unsigned m, std::uint32_t poly, std::optional<Elem> primitive = std::nullopt);

    // Default primitive polynomial for degree m (2 <= m <= 16), generator x.
    static FieldSpec standard(unsigned m);
    // The AES field x^8+x^4+x^3+x+1.
    static FieldSpec aes(std::optional<Elem> primitive = std::nullopt);

    unsigned m() const { return m_; }
    std::uint32_t size() const { return 1u << m_; }
    std::uint32_t poly() const { return poly_; }
    Elem primitive_element() const { return gen_; }

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem mul(Elem a, Elem b) const;
    Elem inv_patched(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;
    // Exponent i in [0, 2^m - 2] with gen^i = a; throws for a = 0.
    std::uint32_t dlog(Elem a) const;
    Elem exp(std::uint64_t i) const { return antilog_[i % (size() - 1)]; }

    bool operator==(const FieldSpec& o) const { return m_ == o.m_ && poly_ == o.poly_ && gen_ == o.gen_; }

private:
    unsigned m_;
    std::uint32_t poly_;
    Elem gen_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> antilog_;
};

// Carry-less product reduced modulo poly, independent of the tables.
Elem poly_mulmod(Elem a, Elem b, std::uint32_t poly);
bool is_irreducible(std::uint32_t poly, unsigned m);

}  // namespace tbembed::algebra
