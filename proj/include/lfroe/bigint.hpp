#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lfroe {

using big_int = mpz_class;
using rational = mpq_class;

// Parses a decimal integer (optional leading '-'). Throws malformed_input.
big_int parse_big_int(std::string_view text);

// Parses "num/den" or "num". The result is canonicalized. Throws
// malformed_input on a zero denominator or bad digits.
rational parse_rational(std::string_view text);

std::string to_string(const big_int& value);
std::string to_string(const rational& value);

// Narrowing with a range check; throws depth_exhausted when the value does
// not fit (used when a big order has to index memory).
std::uint64_t to_u64(const big_int& value);
bool fits_u64(const big_int& value);

// p-adic valuation of a nonzero integer.
std::uint64_t valuation(const big_int& value, const big_int& prime);

bool is_prime(const big_int& value);

// Prime factorization of |value| (value != 0) as ascending (prime, exponent)
// pairs. Trial division followed by Pollard-Brent on the cofactor.
std::vector<std::pair<big_int, std::uint64_t>> factorize(const big_int& value);

} // namespace lfroe
