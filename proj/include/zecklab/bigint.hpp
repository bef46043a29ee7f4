#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace zeck {

using BigInt = mpz_class;

// Parses a base-10 integer with an optional leading '-'. Throws
// std::invalid_argument on anything else.
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& n);

bool fits_u64(const BigInt& n);

// Precondition: fits_u64(n).
std::uint64_t to_u64(const BigInt& n);

BigInt from_u64(std::uint64_t v);

}  // namespace zeck
