#include "tbembed/matrix_order.hpp"

#include <random>
#include <stdexcept>

#include <boost/multiprecision/miller_rabin.hpp>

namespace tbembed::algebra {

namespace {

void require_invertible_square(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix order: matrix is not square");
    if (rank(m) != m.rows()) throw std::domain_error("matrix order: matrix is singular");
}

using u128 = unsigned __int128;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t rho64(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return static_cast<std::uint64_t>((static_cast<u128>(x) * x + c) % n); };
        std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
        const std::uint64_t batch = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = static_cast<std::uint64_t>(static_cast<u128>(q) * (x > y ? x - y : y - x) % n);
                }
                g = gcd64(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

BigInt rho_big(const BigInt& n) {
    if (n < BigInt(std::numeric_limits<std::uint64_t>::max()))
        return BigInt(rho64(static_cast<std::uint64_t>(n)));
    if (n % 2 == 0) return 2;
    for (unsigned c = 1;; ++c) {
        auto f = [&](const BigInt& x) { return BigInt((x * x + c) % n); };
        BigInt y = 2, x = 2, q = 1, g = 1, ys = 2;
        const unsigned batch = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min<std::uint64_t>(batch, r - k); ++i) {
                    y = f(y);
                    q = (q * (x > y ? BigInt(x - y) : BigInt(y - x))) % n;
                }
                g = boost::multiprecision::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = boost::multiprecision::gcd(x > ys ? BigInt(x - ys) : BigInt(ys - x), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(BigInt n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    const BigInt d = rho_big(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::optional<std::uint64_t> matrix_order(const BitMatrix& m, std::uint64_t cap) {
    require_invertible_square(m);
    BitMatrix p = m;
    for (std::uint64_t t = 1; t <= cap; ++t) {
        if (p.is_identity()) return t;
        p = p * m;
    }
    return std::nullopt;
}

BitMatrix matrix_power(const BitMatrix& m, const BigInt& e) {
    if (e < 0) throw std::invalid_argument("negative matrix exponent");
    BitMatrix result = BitMatrix::identity(m.rows());
    if (e == 0) return result;
    const std::size_t bits = boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = result * result;
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = result * m;
    }
    return result;
}

Gf2Poly minimal_polynomial(const BitMatrix& m) {
    const std::size_t n = m.rows();
    SpanSolver covered(n, false);
    Gf2Poly minpoly = Gf2Poly::monomial(0);
    for (std::size_t j = 0; j < n && covered.dim() < n; ++j) {
        BitVector v = BitVector::unit(n, j);
        if (covered.contains(v)) continue;
        SpanSolver krylov(n, true);
        std::size_t steps = 0;
        while (krylov.insert(v)) {
            covered.insert(v);
            v = m.apply(v);
            ++steps;
        }
        const BitVector c = *krylov.solve(v);
        Gf2Poly local = Gf2Poly::monomial(steps);
        for (std::size_t i = 0; i < steps; ++i)
            if (c.get(i)) local.set_coeff(i, !local.coeff(i));
        minpoly = lcm(minpoly, local);
    }
    return minpoly;
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::mt19937_64 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 40, gen);
}

std::map<BigInt, unsigned> factorize(BigInt n) {
    if (n < 1) throw std::invalid_argument("factorize needs a positive integer");
    std::map<BigInt, unsigned> out;
    for (unsigned p = 2; p < 1u << 16 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[BigInt(p)];
            n /= p;
        }
    }
    factor_into(n, out);
    return out;
}

BigInt matrix_order_exact(const BitMatrix& m) {
    require_invertible_square(m);
    const std::size_t n = m.rows();
    const Gf2Poly minpoly = minimal_polynomial(m);

    // multiplicities are at most n, so a power of two above n covers the unipotent part
    unsigned two_exp = 0;
    while ((std::size_t{1} << two_exp) < n) ++two_exp;

    std::map<BigInt, unsigned> factors;
    if (two_exp) factors[BigInt(2)] = two_exp;
    for (std::size_t d : irreducible_factor_degrees(minpoly)) {
        const BigInt mersenne = (BigInt(1) << d) - 1;
        for (const auto& [p, e] : factorize(mersenne))
            factors[p] = std::max(factors[p], e);
    }

    BigInt order = 1;
    for (const auto& [p, e] : factors) order *= boost::multiprecision::pow(p, e);
    if (!matrix_power(m, order).is_identity())
        throw std::logic_error("matrix order: exponent candidate does not annihilate the matrix");

    for (const auto& [p, e] : factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (!matrix_power(m, order / p).is_identity()) break;
            order /= p;
        }
    }
    return order;
}

}  // namespace tbembed::algebra
