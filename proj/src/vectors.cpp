#include "cartier/vectors.hpp"

namespace cartier {

std::string format_vector(const Int64Vector& v, const std::string& symbol) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto c = v(k);
    if (c == 0) continue;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c);
    out += symbol + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace cartier
