#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tbembed::bounds {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Closed rational interval containing a real constant.
struct Interval {
    Rational lo, hi;
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    Rational width() const { return hi - lo; }
};

Interval ln2_bracket();
Interval log2e_bracket();
Interval e_bracket();
// log2(e) * sqrt(2 ln 2)
Interval epsilon_bracket();

// Series evaluations with explicit tail bounds.
Interval ln2_series(unsigned terms);
Interval e_series(unsigned terms);
// The hard-coded brackets contain the series enclosures.
bool constants_cross_checked();

Interval sqrt_bracket(const Interval& x, unsigned digits = 40);
Interval exp_bracket(const Rational& x, unsigned terms = 60);
std::string to_decimal(const Rational& x, unsigned digits);

struct BoundReport {
    std::string id;
    std::string claim;
    std::string left, right;
    bool verdict = false;
    bool informational = false;
    std::string method;
    std::vector<std::string> notes;
};

BoundReport check_factorial_bracket();
// Exact check of n^20 + 2^n n + 2^n < (n+1)^20 for lo <= n <= hi.
BoundReport check_induction_inequality(unsigned lo = 2, unsigned hi = 128);
bool induction_holds(unsigned n);
// (N/e)^N <= N! <= N (N/e)^N checked exactly; the upper side needs N >= 7.
bool stirling_bracket_exact(unsigned N);

struct LinearizationBound {
    unsigned min_exponent = 0;
    BoundReport report;
};

LinearizationBound min_linearization_exponent_by_counting();
LinearizationBound min_linearization_exponent_by_stirling();

BigInt max_even_order_gl(unsigned N);

struct EvenOrderWitness {
    unsigned nu = 0;
    BigInt n;
    std::vector<unsigned> primes;
    unsigned prime_sum = 0;
    BigInt order;
    // e^sqrt(n ln n / 4), enclosed
    Interval threshold;
    bool exceeds_threshold = false;
};

// Greedy odd primes 3, 5, 7, ... while 4 + sum <= 2^nu, optionally capped.
EvenOrderWitness alt_even_order_witness(unsigned nu, std::optional<unsigned> largest_prime = std::nullopt);

LinearizationBound min_linearization_exponent_by_order();
// Landau's asymptotic e^sqrt(n ln n), taken as exact.
LinearizationBound min_linearization_exponent_by_landau();

std::vector<BoundReport> all_bound_reports();

}  // namespace tbembed::bounds
