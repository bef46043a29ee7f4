#include "zecklab/bigint.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace zeck {

BigInt parse_bigint(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && text[0] == '-') i = 1;
  if (i == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

bool fits_u64(const BigInt& n) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return sgn(n) >= 0 && mpz_fits_ulong_p(n.get_mpz_t()) != 0;
}

std::uint64_t to_u64(const BigInt& n) { return static_cast<std::uint64_t>(n.get_ui()); }

BigInt from_u64(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace zeck
