#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "tbembed/bit_matrix.hpp"
#include "tbembed/gf2_poly.hpp"

namespace tbembed::algebra {

using BigInt = boost::multiprecision::cpp_int;

// Smallest t with M^t = I by iteration, or nullopt once t would exceed cap.
std::optional<std::uint64_t> matrix_order(const BitMatrix& m, std::uint64_t cap);

// Exact order through the minimal polynomial and a divisor search.
BigInt matrix_order_exact(const BitMatrix& m);

BitMatrix matrix_power(const BitMatrix& m, const BigInt& e);
Gf2Poly minimal_polynomial(const BitMatrix& m);

bool is_probable_prime(const BigInt& n);
std::map<BigInt, unsigned> factorize(BigInt n);

}  // namespace tbembed::algebra
