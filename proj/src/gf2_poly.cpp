#include "tbembed/gf2_poly.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace tbembed::algebra {

Gf2Poly Gf2Poly::monomial(std::size_t degree) {
    Gf2Poly p;
    p.set_coeff(degree);
    return p;
}

Gf2Poly Gf2Poly::from_u64(std::uint64_t bits) {
    Gf2Poly p;
    p.w_.push_back(bits);
    p.trim();
    return p;
}

int Gf2Poly::degree() const {
    for (std::size_t i = w_.size(); i-- > 0;)
        if (w_[i]) return static_cast<int>(i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w_[i])));
    return -1;
}

bool Gf2Poly::coeff(std::size_t i) const {
    return (i >> 6) < w_.size() && ((w_[i >> 6] >> (i & 63)) & 1u);
}

void Gf2Poly::set_coeff(std::size_t i, bool v) {
    if ((i >> 6) >= w_.size()) {
        if (!v) return;
        w_.resize((i >> 6) + 1, 0);
    }
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) w_[i >> 6] |= bit;
    else w_[i >> 6] &= ~bit;
    trim();
}

void Gf2Poly::trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& o) const {
    Gf2Poly r = *this;
    if (r.w_.size() < o.w_.size()) r.w_.resize(o.w_.size(), 0);
    for (std::size_t i = 0; i < o.w_.size(); ++i) r.w_[i] ^= o.w_[i];
    r.trim();
    return r;
}

Gf2Poly Gf2Poly::operator*(const Gf2Poly& o) const {
    Gf2Poly r;
    if (is_zero() || o.is_zero()) return r;
    r.w_.assign(w_.size() + o.w_.size() + 1, 0);
    const int da = degree();
    for (int i = 0; i <= da; ++i) {
        if (!coeff(static_cast<std::size_t>(i))) continue;
        const std::size_t ws = static_cast<std::size_t>(i) >> 6, bs = static_cast<std::size_t>(i) & 63;
        for (std::size_t j = 0; j < o.w_.size(); ++j) {
            r.w_[ws + j] ^= o.w_[j] << bs;
            if (bs) r.w_[ws + j + 1] ^= o.w_[j] >> (64 - bs);
        }
    }
    r.trim();
    return r;
}

Gf2Poly Gf2Poly::operator%(const Gf2Poly& mod) const {
    const int dm = mod.degree();
    if (dm < 0) throw std::domain_error("polynomial modulo zero");
    Gf2Poly r = *this;
    for (int d = r.degree(); d >= dm; d = r.degree()) r = r + (mod * monomial(static_cast<std::size_t>(d - dm)));
    return r;
}

Gf2Poly Gf2Poly::operator/(const Gf2Poly& div) const {
    const int dm = div.degree();
    if (dm < 0) throw std::domain_error("polynomial division by zero");
    Gf2Poly r = *this, q;
    for (int d = r.degree(); d >= dm; d = r.degree()) {
        const auto shift = static_cast<std::size_t>(d - dm);
        q.set_coeff(shift, !q.coeff(shift));
        r = r + (div * monomial(shift));
    }
    return q;
}

bool Gf2Poly::operator==(const Gf2Poly& o) const { return w_ == o.w_; }

Gf2Poly Gf2Poly::derivative() const {
    Gf2Poly d;
    for (int i = 1; i <= degree(); i += 2)
        if (coeff(static_cast<std::size_t>(i))) d.set_coeff(static_cast<std::size_t>(i - 1));
    return d;
}

std::string Gf2Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!coeff(static_cast<std::size_t>(i))) continue;
        if (!s.empty()) s += "+";
        s += i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i);
    }
    return s;
}

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
        Gf2Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Gf2Poly lcm(const Gf2Poly& a, const Gf2Poly& b) {
    return (a * b) / gcd(a, b);
}

Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& mod) {
    return (a * b) % mod;
}

std::vector<std::size_t> irreducible_factor_degrees(Gf2Poly f) {
    if (f.is_zero()) throw std::invalid_argument("factor degrees of the zero polynomial");
    std::set<std::size_t> degrees;
    const Gf2Poly x = Gf2Poly::monomial(1);
    Gf2Poly h = x % f;
    for (std::size_t i = 1; f.degree() > 0; ++i) {
        if (static_cast<int>(2 * i) > f.degree()) {
            // every factor of degree below i is gone, so f is irreducible
            degrees.insert(static_cast<std::size_t>(f.degree()));
            break;
        }
        h = mulmod(h, h, f);
        Gf2Poly g = gcd(h + x, f);
        if (g.is_one()) continue;
        degrees.insert(i);
        while (!g.is_one()) {
            f = f / g;
            g = gcd(g, f);
        }
        h = h % f;
    }
    return {degrees.begin(), degrees.end()};
}

}  // namespace tbembed::algebra
