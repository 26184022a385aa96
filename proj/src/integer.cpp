#include "cartier/integer.hpp"

#include <limits>
#include <stdexcept>

namespace cartier {

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
  return value.convert_to<std::int64_t>();
}

}  // namespace cartier
