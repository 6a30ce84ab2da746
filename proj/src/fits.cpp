#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tbembed/extend.hpp"
#include "tbembed/rng.hpp"

namespace tbembed::extend {

namespace {

std::uint64_t binom(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t fact(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

bool pairs_up(Elem a0, Elem a1, Elem a2, Elem a3) {
    return (a0 == a1 && a2 == a3) || (a0 == a2 && a1 == a3) || (a0 == a3 && a1 == a2);
}

}  // namespace

void enumerate_4_related(const FieldMatrix& M, const std::function<void(const RelatedQuadruple&)>& visit,
                         const RelatedOptions& opt) {
    const std::size_t n = M.n();
    if (n < 2) throw std::invalid_argument("4-related vectors need n >= 2");
    if (opt.pos_ij == opt.pos_xy || opt.pos_ij >= n || opt.pos_xy >= n)
        throw std::invalid_argument("invalid varying coordinate positions");
    const TrailingMode mode = opt.trailing.value_or(n == 2 ? TrailingMode::all_values : TrailingMode::zero);
    const std::uint64_t q = M.field().size();
    const std::size_t free_rest = n - 2;
    std::uint64_t rest_count = 1;
    if (mode == TrailingMode::all_values)
        for (std::size_t k = 0; k < free_rest; ++k) rest_count *= q;

    RelatedQuadruple quad;
    quad.pos_ij = opt.pos_ij;
    quad.pos_xy = opt.pos_xy;
    quad.rest.assign(free_rest, 0);
    for (std::uint64_t rc = 0; rc < rest_count; ++rc) {
        std::uint64_t t = rc;
        for (std::size_t k = 0; k < free_rest; ++k, t /= q) quad.rest[k] = static_cast<Elem>(t % q);
        for (std::uint64_t idx = 0; idx < q * q * q * q; ++idx) {
            quad.i = static_cast<Elem>(idx % q);
            quad.j = static_cast<Elem>(idx / q % q);
            quad.x = static_cast<Elem>(idx / (q * q) % q);
            quad.y = static_cast<Elem>(idx / (q * q * q));
            const Elem first[4] = {quad.i, quad.i, quad.j, quad.j};
            const Elem second[4] = {quad.x, quad.y, quad.x, quad.y};
            for (int h = 0; h < 4; ++h) {
                std::vector<Elem> v(n);
                std::size_t r = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == opt.pos_ij) v[k] = first[h];
                    else if (k == opt.pos_xy) v[k] = second[h];
                    else v[k] = quad.rest[r++];
                }
                const std::vector<Elem> mv = M.apply(v);
                v.insert(v.end(), mv.begin(), mv.end());
                quad.w[h] = std::move(v);
            }
            visit(quad);
        }
    }
}

std::vector<RelatedQuadruple> all_4_related(const FieldMatrix& M, const RelatedOptions& opt) {
    std::vector<RelatedQuadruple> out;
    enumerate_4_related(M, [&](const RelatedQuadruple& q) { out.push_back(q); }, opt);
    return out;
}

bool is_totally_related(const RelatedQuadruple& q) {
    for (std::size_t c = 0; c < q.w[0].size(); ++c)
        if (!pairs_up(q.w[0][c], q.w[1][c], q.w[2][c], q.w[3][c])) return false;
    return true;
}

bool is_coupled(const RelatedQuadruple& q) {
    const auto& w = q.w;
    return (w[0] == w[1] && w[2] == w[3]) || (w[0] == w[2] && w[1] == w[3]) || (w[0] == w[3] && w[1] == w[2]);
}

RelatedCheck check_related_equivalence(const FieldMatrix& M, const RelatedOptions& opt) {
    RelatedCheck res;
    enumerate_4_related(
        M,
        [&](const RelatedQuadruple& q) {
            ++res.quadruples;
            const bool tot = is_totally_related(q), cpl = is_coupled(q);
            res.totally_related += tot;
            res.coupled += cpl;
            if (tot != cpl) {
                if (!res.first_mismatch) res.first_mismatch = q;
                ++res.mismatches;
            }
        },
        opt);
    return res;
}

bool valid_sextuple(const FitSextuple& s, int n) {
    return s.a > 0 && s.b > 0 && s.c > 0 && s.a <= n && s.b <= n && s.c <= n && s.a + s.b + s.c == 2 * n &&
           s.a >= s.b && s.b >= s.c && s.x >= 0 && s.y >= 0 && s.z >= 0 && s.x + s.y + s.z == n && s.x < s.a &&
           s.y < s.b && s.z < s.c;
}

std::vector<FitSextuple> fit_sextuples(int n) {
    std::vector<FitSextuple> out;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= a; ++b) {
            const int c = 2 * n - a - b;
            if (c < 1 || c > b) continue;
            for (int x = 0; x <= n; ++x)
                for (int y = 0; x + y <= n; ++y) {
                    const FitSextuple s{x, y, n - x - y, a, b, c};
                    if (valid_sextuple(s, n)) out.push_back(s);
                }
        }
    return out;
}

std::uint64_t fit_cardinality(const FitSextuple& s, int n) {
    const auto [x, y, z, a, b, c] = s;
    std::uint64_t sum = 0;
    if (z == 0 && x != 0 && y != 0) {
        for (int i = 0; i <= x; ++i) sum += binom(n - c, i) * binom(n - b, x - i) * binom(b - i, y);
        return sum * fact(x) * fact(y);
    }
    if (y == 0 && x != 0 && z != 0) {
        for (int i = 0; i <= x; ++i) sum += binom(n - b, i) * binom(n - c, x - i) * binom(c - i, z);
        return sum * fact(x) * fact(z);
    }
    if (x == 0 && y != 0 && z != 0) {
        for (int i = 0; i <= y; ++i) sum += binom(n - a, i) * binom(n - c, x - i) * binom(c - i, z);
        return sum * fact(y) * fact(z);
    }
    if (x != 0 && y != 0 && z != 0) {
        for (int i = 0; i <= x; ++i)
            for (int j = 0; j <= y; ++j)
                sum += binom(n - c, i) * binom(n - b, x - i) * binom(n - a, j) * binom(n - c - i, y - j) *
                       binom(c - (x - i) - j, z);
        return sum * fact(x) * fact(y) * fact(z);
    }
    return 0;
}

std::vector<Elem> determinant_terms(const FieldMatrix& M) {
    const std::size_t n = M.n();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Elem> terms;
    do {
        Elem t = 1;
        for (std::size_t i = 0; i < n; ++i) t = M.field().mul(t, M.at(i, perm[i]));
        terms.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return terms;
}

namespace {

// zero[k]: some k-element subset of the terms sums to zero.
std::vector<bool> zero_sum_sizes(const std::vector<Elem>& terms) {
    const std::size_t T = terms.size();
    if (T > 24) throw std::invalid_argument("too many determinant terms");
    std::vector<bool> zero(T + 1, false);
    Elem sum = 0;
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << T); ++g) {
        // Gray code step flips one term in or out of the subset.
        const unsigned bit = static_cast<unsigned>(__builtin_ctzll(g));
        sum ^= terms[bit];
        const std::uint64_t mask = g ^ (g >> 1);
        if (sum == 0) zero[static_cast<std::size_t>(__builtin_popcountll(mask))] = true;
    }
    return zero;
}

}  // namespace

bool fits(const FieldMatrix& M, const FitSextuple& s) {
    const int n = static_cast<int>(M.n());
    if (n > 4) throw std::invalid_argument("fits is supported for n <= 4");
    const std::uint64_t k = fit_cardinality(s, n);
    const auto terms = determinant_terms(M);
    if (k == 0 || k > terms.size()) return true;
    return !zero_sum_sizes(terms)[k];
}

TheoremConditions theorem_conditions(const FieldMatrix& M) {
    const int n = static_cast<int>(M.n());
    if (n > 4) throw std::invalid_argument("theorem conditions are supported for n <= 4");
    TheoremConditions tc;
    tc.det_ok = M.determinant() != 0;
    tc.minors_ok = M.all_proper_minors_nonzero();
    const auto terms = determinant_terms(M);
    const auto zero = zero_sum_sizes(terms);
    for (const auto& s : fit_sextuples(n)) {
        const std::uint64_t k = fit_cardinality(s, n);
        if (k != 0 && k <= terms.size() && zero[k]) tc.failing.push_back(s);
    }
    tc.all_fit = tc.failing.empty();
    tc.verdict = tc.det_ok && tc.minors_ok && tc.all_fit;
    return tc;
}

EmbeddingParams related_params(const FieldMatrix& M) {
    return EmbeddingParams::partial_orbit(M.field(), static_cast<unsigned>(M.n()), M.to_binary(), 2);
}

CorollaryReport validate_corollary(const FieldMatrix& M, std::size_t random_maps, std::uint64_t seed) {
    CorollaryReport rep;
    rep.conditions = theorem_conditions(M);
    const EmbeddingParams p = related_params(M);
    const FieldSpec& f = M.field();
    const unsigned m = f.m(), n = static_cast<unsigned>(M.n());

    std::vector<std::pair<std::string, StateMap>> panel;
    panel.emplace_back("identity", [](const BitVector& v) { return v; });
    panel.emplace_back("brick-inversion", [f, m, n](const BitVector& v) {
        BitVector out(v.size());
        for (unsigned j = 0; j < n; ++j) out.set_bits(j * m, m, f.inv_patched(static_cast<Elem>(v.get_bits(j * m, m))));
        return out;
    });
    std::vector<std::uint64_t> swap(std::size_t{1} << p.r());
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    panel.emplace_back("transposition", table_map(p.r(), swap));
    for (std::size_t k = 0; k < random_maps; ++k)
        panel.emplace_back(std::string("random-").append(std::to_string(k)),
                           random_state_permutation(p.r(), SplitMix64::derive(seed, k)));

    for (const auto& [name, sigma] : panel) {
        ++rep.maps_tested;
        const SExtendResult r = is_s_extendible(sigma, p, 4);
        if (r.extendible) {
            ++rep.extendible;
        } else {
            rep.failed_maps.push_back(name);
            if (!rep.first_failure) {
                rep.first_failure = r;
                rep.first_failure_map = sigma;
            }
        }
    }
    return rep;
}

}  // namespace tbembed::extend
