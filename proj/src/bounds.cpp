#include "tbembed/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tbembed::bounds {

namespace {

Rational dec(const char* digits) {
    // "d.ddd" -> exact rational
    std::string s(digits);
    const auto dot = s.find('.');
    BigInt scale = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
    s.erase(dot, 1);
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    return Rational(BigInt(s), scale);
}

Rational pow10(unsigned d) {
    return Rational(boost::multiprecision::pow(BigInt(10), d));
}

BigInt floor_of(const Rational& x) {
    BigInt q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    if (x < 0 && Rational(q) != x) q -= 1;
    return q;
}

BigInt ceil_of(const Rational& x) {
    const BigInt f = floor_of(x);
    return Rational(f) == x ? f : f + 1;
}

Rational rpow(const Rational& x, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

BigInt pow2(unsigned e) { return BigInt(1) << e; }

std::string log2_str(double v) {
    std::ostringstream os;
    os.precision(6);
    os << "2^" << v;
    return os.str();
}

// Lower bound on log2((2^128)!) from (N/e)^N <= N!.
Rational stirling_lower_log2() {
    return Rational(pow2(128)) * (Rational(128) - log2e_bracket().hi);
}

Rational stirling_upper_log2() {
    return Rational(pow2(128)) * (Rational(128) - log2e_bracket().lo) + 128;
}

}  // namespace

Interval ln2_bracket() {
    const Rational lo = dec("0.693147180559945309417232121458176568");
    return {lo, lo + 1 / pow10(36)};
}

Interval log2e_bracket() {
    const Rational lo = dec("1.442695040888963407359924681001892137");
    return {lo, lo + 1 / pow10(36)};
}

Interval e_bracket() {
    const Rational lo = dec("2.718281828459045235360287471352662497");
    return {lo, lo + 1 / pow10(36)};
}

Interval epsilon_bracket() {
    const Interval l2 = ln2_bracket();
    const Interval root = sqrt_bracket({2 * l2.lo, 2 * l2.hi});
    const Interval lg = log2e_bracket();
    return {lg.lo * root.lo, lg.hi * root.hi};
}

Interval ln2_series(unsigned terms) {
    // ln 2 = sum_{k>=1} 1 / (k 2^k); tail after K terms < 1 / ((K+1) 2^K)
    Rational s = 0;
    for (unsigned k = 1; k <= terms; ++k) s += Rational(1, BigInt(k) * pow2(k));
    return {s, s + Rational(1, BigInt(terms + 1) * pow2(terms))};
}

Interval e_series(unsigned terms) {
    // e = sum_{k>=0} 1/k!; tail after k = 0..K is below 2/(K+1)!
    Rational s = 0;
    BigInt f = 1;
    for (unsigned k = 0; k <= terms; ++k) {
        if (k) f *= k;
        s += Rational(1, f);
    }
    return {s, s + Rational(2, f * (terms + 1))};
}

bool constants_cross_checked() {
    const Interval l2 = ln2_series(160);
    const Interval e = e_series(60);
    const Interval lg{1 / l2.hi, 1 / l2.lo};
    return ln2_bracket().contains(l2) && e_bracket().contains(e) && log2e_bracket().contains(lg);
}

Interval sqrt_bracket(const Interval& x, unsigned digits) {
    if (x.lo < 0) throw std::domain_error("sqrt of a negative interval");
    const Rational scale = pow10(digits);
    const BigInt s = boost::multiprecision::numerator(scale);
    const BigInt lo = boost::multiprecision::sqrt(floor_of(x.lo * scale * scale));
    const BigInt hi = boost::multiprecision::sqrt(ceil_of(x.hi * scale * scale)) + 1;
    return {Rational(lo, s), Rational(hi, s)};
}

Interval exp_bracket(const Rational& x, unsigned terms) {
    if (x < 0) throw std::domain_error("exp bracket expects a non-negative argument");
    const BigInt q = floor_of(x);
    const Rational f = x - Rational(q);
    const unsigned qi = static_cast<unsigned>(q);
    Rational s = 0, term = 1;
    for (unsigned k = 0; k <= terms; ++k) {
        if (k) term = term * f / k;
        s += term;
    }
    // e^f <= 3 for f < 1 bounds the Lagrange remainder
    const Rational rem = 3 * term * f / (terms + 1);
    const Interval e = e_bracket();
    return {rpow(e.lo, qi) * s, rpow(e.hi, qi) * (s + rem)};
}

std::string to_decimal(const Rational& x, unsigned digits) {
    const bool neg = x < 0;
    const BigInt v = floor_of((neg ? -x : x) * pow10(digits));
    std::string s = v.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits) s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

bool stirling_bracket_exact(unsigned N) {
    if (N < 7) throw std::invalid_argument("the upper bracket needs N >= 7");
    BigInt fact = 1;
    for (unsigned i = 2; i <= N; ++i) fact *= i;
    const Interval e = e_bracket();
    const BigInt nn = boost::multiprecision::pow(BigInt(N), N);
    // N^N <= N! e^N  and  N! e^N <= N^{N+1}
    return Rational(nn) <= Rational(fact) * rpow(e.lo, N) && Rational(fact) * rpow(e.hi, N) <= Rational(nn * N);
}

BoundReport check_factorial_bracket() {
    BoundReport r;
    r.id = "factorial-bracket";
    r.claim = "2^(n^19) < (2^n)! < 2^(n^20) at n = 2^7";
    r.method = "Stirling bracket N log2 N - N log2 e <= log2 N! <= N log2 N - N log2 e + log2 N, certified log2 e";
    const Rational lo = stirling_lower_log2(), hi = stirling_upper_log2();
    const BigInt n19 = pow2(133), n20 = pow2(140);
    const bool small = stirling_bracket_exact(8);
    r.verdict = Rational(n19) < lo && hi < Rational(n20) && small;
    const double log2e = static_cast<double>(log2e_bracket().lo);
    r.left = "n^19 = 2^133, n^20 = 2^140";
    r.right = "log2((2^128)!) in [" + log2_str(128 + std::log2(128 - log2e)) + ", " +
              log2_str(128 + std::log2(128 - log2e)) + " + 128]";
    r.notes.push_back(std::string("exact small-N bracket at N = 8: ") + (small ? "holds" : "fails"));
    return r;
}

bool induction_holds(unsigned n) {
    const BigInt N = n;
    const BigInt lhs = boost::multiprecision::pow(N, 20) + pow2(n) * N + pow2(n);
    return lhs < boost::multiprecision::pow(N + 1, 20);
}

BoundReport check_induction_inequality(unsigned lo, unsigned hi) {
    BoundReport r;
    r.id = "induction-inequality";
    r.claim = "n^20 + 2^n n + 2^n < (n+1)^20 for " + std::to_string(lo) + " <= n <= " + std::to_string(hi);
    r.method = "exact big-integer evaluation for every n";
    r.verdict = true;
    for (unsigned n = lo; n <= hi; ++n)
        if (!induction_holds(n)) {
            r.verdict = false;
            r.notes.push_back("first failure at n = " + std::to_string(n));
            break;
        }
    r.left = "n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    r.right = r.verdict ? "all hold" : r.notes.back();
    r.notes.push_back(std::string("n = ") + std::to_string(hi + 1) + " (outside range): " +
                      (induction_holds(hi + 1) ? "holds" : "fails"));
    return r;
}

namespace {

// Smallest l with 2^(2l) > bound, i.e. GL(2^l) not excluded by order count.
unsigned counting_exponent(const BigInt& log2_alt_lower) {
    unsigned l = 1;
    while (pow2(2 * l) <= log2_alt_lower) ++l;
    return l;
}

}  // namespace

LinearizationBound min_linearization_exponent_by_counting() {
    LinearizationBound out;
    auto& r = out.report;
    r.id = "counting-exponent";
    r.claim = "Alt((F2)^128) in GL((F2)^(2^l)) forces l >= 67";
    r.method = "log2|Alt| > 2^133 - 1 (factorial bracket), log2|GL(2^l)| < 2^(2l)";
    const BigInt alt_lower = pow2(133) - 1;
    out.min_exponent = counting_exponent(alt_lower);
    const bool bracket = check_factorial_bracket().verdict;
    r.verdict = bracket && alt_lower >= pow2(132) && out.min_exponent == 67;
    r.left = "log2|Alt| >= 2^133 - 1 >= 2^132";
    r.right = "l = 66 excluded, l = 67 not excluded: l >= " + std::to_string(out.min_exponent);
    return out;
}

LinearizationBound min_linearization_exponent_by_stirling() {
    LinearizationBound out;
    auto& r = out.report;
    r.id = "counting-exponent-stirling";
    r.claim = "sharper Stirling lower bound gives l >= 68";
    r.method = "log2|Alt| >= 2^128 (128 - log2 e) - 1 with certified log2 e";
    r.informational = true;
    const BigInt alt_lower = floor_of(stirling_lower_log2()) - 1;
    out.min_exponent = counting_exponent(alt_lower);
    r.verdict = out.min_exponent == 68;
    r.left = "log2|Alt| >= " + log2_str(std::log2(static_cast<double>(alt_lower)));
    r.right = "l >= " + std::to_string(out.min_exponent);
    return out;
}

BigInt max_even_order_gl(unsigned N) {
    if (N < 4) throw std::invalid_argument("N >= 4");
    return pow2(N - 1) - 2;
}

EvenOrderWitness alt_even_order_witness(unsigned nu, std::optional<unsigned> largest_prime) {
    if (nu < 7) throw std::invalid_argument("nu >= 7");
    if (nu > 24) throw std::invalid_argument("explicit witness construction supports nu <= 24");
    EvenOrderWitness w;
    w.nu = nu;
    w.n = pow2(nu);
    const unsigned n = 1u << nu;
    std::vector<bool> composite(n + 1, false);
    unsigned sum = 0;
    for (unsigned p = 3; p <= n; p += 2) {
        if (composite[p]) continue;
        for (std::uint64_t k = std::uint64_t{p} * p; k <= n; k += 2 * p) composite[k] = true;
        if (largest_prime && p > *largest_prime) break;
        if (4 + sum + p > n) break;
        sum += p;
        w.primes.push_back(p);
    }
    w.prime_sum = sum;
    w.order = 2;
    for (auto p : w.primes) w.order *= p;
    const Interval l2 = ln2_bracket();
    // n ln n / 4 = n nu ln 2 / 4
    const Interval arg{Rational(n) * nu * l2.lo / 4, Rational(n) * nu * l2.hi / 4};
    const Interval root = sqrt_bracket(arg);
    w.threshold = {exp_bracket(root.lo).lo, exp_bracket(root.hi).hi};
    w.exceeds_threshold = Rational(w.order) > w.threshold.hi;
    return w;
}

namespace {

// Alt((F2)^128) holds an element of even order above 2^(c * 2^66 * eps);
// GL(N) elements have order at most 2^(N-1) - 2.
LinearizationBound order_exponent(unsigned scale_log2, const std::string& id, const std::string& claim) {
    LinearizationBound out;
    auto& r = out.report;
    r.id = id;
    r.claim = claim;
    const Interval eps = epsilon_bracket();
    const Rational E_lo = Rational(pow2(scale_log2)) * eps.lo, E_hi = Rational(pow2(scale_log2)) * eps.hi;
    unsigned l = 1;
    // excluded while 2^E >= 2^(N-1) > max order in GL(N)
    while (E_lo >= Rational(pow2(l) - 1)) ++l;
    out.min_exponent = l;
    const bool satisfiable = E_hi <= Rational(pow2(l) - 2);
    r.verdict = satisfiable;
    r.left = "2^(2^" + std::to_string(scale_log2) + " eps), eps in [" + to_decimal(eps.lo, 12) + ", " +
             to_decimal(eps.hi, 12) + "]";
    r.right = "N = 2^" + std::to_string(l - 1) + " false, N = 2^" + std::to_string(l) + " " +
              (satisfiable ? "true" : "undecided") + ": l >= " + std::to_string(l);
    return out;
}

}  // namespace

LinearizationBound min_linearization_exponent_by_order() {
    auto out = order_exponent(66, "order-exponent", "2^(2^66 eps) <= 2^(N-1) - 2 forces N >= 2^67");
    out.report.method = "even-order element of Alt above e^sqrt(n ln n / 4), n = 2^128, exponent arithmetic";
    out.report.verdict = out.report.verdict && out.min_exponent == 67;
    const Interval eps = epsilon_bracket();
    out.report.verdict = out.report.verdict && eps.lo >= Rational(166, 100) && eps.hi <= Rational(170, 100);
    return out;
}

LinearizationBound min_linearization_exponent_by_landau() {
    auto out = order_exponent(67, "order-exponent-landau", "Landau growth e^sqrt(n ln n) would give l >= 68");
    out.report.method = "maximal element order asymptotic to e^sqrt(n ln n), taken as exact";
    out.report.informational = true;
    out.report.verdict = out.report.verdict && out.min_exponent == 68;
    return out;
}

std::vector<BoundReport> all_bound_reports() {
    std::vector<BoundReport> out;
    BoundReport c;
    c.id = "constants";
    c.claim = "hard-coded ln 2, log2 e, e brackets contain series enclosures";
    c.method = "rational series with tail bounds";
    c.verdict = constants_cross_checked();
    c.left = "ln 2 in [" + to_decimal(ln2_bracket().lo, 20) + ", ...]";
    c.right = c.verdict ? "consistent" : "inconsistent";
    out.push_back(c);

    out.push_back(check_factorial_bracket());
    out.push_back(check_induction_inequality());
    out.push_back(min_linearization_exponent_by_counting().report);
    out.push_back(min_linearization_exponent_by_stirling().report);

    BoundReport gl;
    gl.id = "gl-even-order";
    gl.claim = "max even order in GL(4) is 2(2^2 - 1) = 6";
    gl.method = "closed form 2^(N-1) - 2";
    gl.verdict = max_even_order_gl(4) == 6;
    gl.left = "N = 4";
    gl.right = max_even_order_gl(4).str();
    out.push_back(gl);

    for (std::optional<unsigned> cap : {std::optional<unsigned>(19), std::optional<unsigned>()}) {
        const auto w = alt_even_order_witness(7, cap);
        BoundReport a;
        a.id = cap ? "alt-even-order-p19" : "alt-even-order-greedy";
        a.claim = "Alt(128) has an element of even order above e^sqrt(32 ln 128)";
        a.method = "2 * product of odd primes with 4 + sum <= 128, certified exponential";
        a.verdict = w.exceeds_threshold && 4 + w.prime_sum <= 128;
        std::string ps;
        for (auto p : w.primes) ps += (ps.empty() ? "" : ",") + std::to_string(p);
        a.left = "order " + w.order.str() + " from {" + ps + "}, 4 + sum = " + std::to_string(4 + w.prime_sum);
        a.right = "threshold < " + to_decimal(w.threshold.hi, 2);
        out.push_back(a);
    }

    out.push_back(min_linearization_exponent_by_order().report);
    out.push_back(min_linearization_exponent_by_landau().report);
    return out;
}

}  // namespace tbembed::bounds
