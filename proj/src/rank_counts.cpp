#include <stdexcept>

#include "tbembed/rankstats.hpp"

namespace tbembed::rankstats {

namespace {

BigInt ipow(const BigInt& base, unsigned e) {
    return boost::multiprecision::pow(base, e);
}

}  // namespace

BigInt q_binomial(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= ipow(q, n - i) - 1;
        den *= ipow(q, i + 1) - 1;
    }
    return num / den;
}

BigInt migler_count(unsigned k, unsigned t, unsigned n, unsigned q) {
    if (k > t || k > n) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        const BigInt qi = ipow(q, i);
        num *= (ipow(q, t) - qi) * (ipow(q, n) - qi);
        den *= ipow(q, k) - qi;
    }
    return num / den;
}

Rational xi(unsigned h, const BigInt& c, unsigned b, unsigned z) {
    if (h <= 2) return h;
    if (h >= z) throw std::domain_error("xi(h) requires h <= z - 1");
    const BigInt cb = ipow(c, b);
    const BigInt two_h = BigInt(1) << h;
    return Rational(h) + Rational((two_h - h - 1) * cb, BigInt(1) << z);
}

Rational rho_full(unsigned k, const BigInt& c, unsigned b, unsigned z) {
    if (k == 0 || k > z) throw std::domain_error("rho(k, k) requires 1 <= k <= z");
    const Rational cb = ipow(c, b);
    Rational out = 1;
    for (unsigned i = 1; i <= k; ++i) out *= cb - xi(i - 1, c, b, z);
    return out;
}

Rational rho_rank_deficit(unsigned k, const BigInt& c, unsigned b, unsigned z) {
    if (k < 2 || k > z) throw std::domain_error("rho(k, k-1) requires 2 <= k <= z");
    const BigInt cb = ipow(c, b);
    Rational prev = cb;  // rho(2, 1)
    for (unsigned j = 3; j <= k; ++j) {
        if (j <= 4)
            prev = rho_full(j - 1, c, b, z) * xi(j - 1, c, b, z) + prev * (Rational(cb) - xi(j - 2, c, b, z));
        else
            prev = rho_full(j - 1, c, b, z) * xi(j - 1, c, b, z) +
                   prev * Rational(((BigInt(1) << z) - (BigInt(1) << (j - 2))) * cb, BigInt(1) << z);
    }
    return prev;
}

RankHistogram migler_distribution(unsigned t, unsigned n, unsigned q) {
    RankHistogram h(Source::formula);
    for (unsigned k = 0; k <= std::min(t, n); ++k) h.add(k, migler_count(k, t, n, q));
    return h;
}

RankHistogram exhaustive_admissible_ranks(const embed::EmbeddingParams& p, unsigned k) {
    const std::size_t states = std::size_t{1} << p.r();
    if (p.r() * k > 24) throw std::invalid_argument("too many row tuples to enumerate");
    std::vector<BitVector> rows;
    for (std::size_t x = 0; x < states; ++x) rows.push_back(embed::alpha(p, BitVector::from_u64(p.r(), x)));
    std::vector<std::uint64_t> count(k + 1, 0);
    std::vector<std::size_t> idx(k, 0);
    BitMatrix m(k, p.s());
    while (true) {
        for (unsigned i = 0; i < k; ++i) m.set_row(i, rows[idx[i]]);
        ++count[algebra::rank(m)];
        unsigned i = 0;
        while (i < k && ++idx[i] == states) idx[i++] = 0;
        if (i == k) break;
    }
    RankHistogram h(Source::exhaustive);
    for (unsigned r = 0; r <= k; ++r)
        if (count[r]) h.add(r, count[r]);
    return h;
}

}  // namespace tbembed::rankstats
