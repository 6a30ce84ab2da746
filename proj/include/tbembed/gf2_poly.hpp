#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tbembed::algebra {

// Polynomial over F_2, bit i = coefficient of x^i.
class Gf2Poly {
public:
    Gf2Poly() = default;
    static Gf2Poly monomial(std::size_t degree);
    static Gf2Poly from_u64(std::uint64_t bits);

    int degree() const;
    bool is_zero() const { return degree() < 0; }
    bool is_one() const { return degree() == 0; }
    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i, bool v = true);

    Gf2Poly operator+(const Gf2Poly& o) const;
    Gf2Poly operator*(const Gf2Poly& o) const;
    Gf2Poly operator%(const Gf2Poly& mod) const;
    Gf2Poly operator/(const Gf2Poly& div) const;
    bool operator==(const Gf2Poly& o) const;

    Gf2Poly derivative() const;
    std::string to_string() const;

    friend Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
    friend Gf2Poly lcm(const Gf2Poly& a, const Gf2Poly& b);

private:
    void trim();
    std::vector<std::uint64_t> w_;
};

Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
Gf2Poly lcm(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& mod);

// Degrees of the distinct irreducible factors of f (f nonzero, any multiplicity).
std::vector<std::size_t> irreducible_factor_degrees(Gf2Poly f);

}  // namespace tbembed::algebra
