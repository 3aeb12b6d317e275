#include "ilpdp/wide.hpp"

#include <algorithm>

namespace ilpdp {

std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string digits;
  // Work with negative remainders so kWideMin is handled.
  Wide rest = negative ? v : -v;
  while (rest != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(rest % 10)));
    rest /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Wide parse_wide(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  Wide value = 0;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch < '0' || ch > '9') throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    // Accumulate negatively to reach kWideMin.
    value = checked_sub(checked_mul(value, 10), ch - '0');
  }
  return negative ? value : checked_sub(0, value);
}

}  // namespace ilpdp
