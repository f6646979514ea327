#include "qwalk/ucpg_graph.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace qwalk {

Index dense_guard() {
  const char* env = std::getenv("QWALK_DENSE_GUARD");
  if (env == nullptr || *env == '\0') return kDefaultDenseGuard;
  Index value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value < 1) {
    throw ConfigError(std::string("QWALK_DENSE_GUARD must be a positive integer, got '") +
                      env + "'");
  }
  return value;
}

UcpgConfig UcpgConfig::make(Index n_total, Index p_parts, Index m0) {
  std::ostringstream triple;
  triple << "(N=" << n_total << ", P=" << p_parts << ", m0=" << m0 << ")";
  if (p_parts < 1) throw ConfigError("P must be >= 1 in " + triple.str());
  if (m0 < 1) throw DomainError("m0 must be >= 1 in " + triple.str());
  if (m0 >= n_total) throw DomainError("m0 must be < N in " + triple.str());
  if ((n_total - m0) % p_parts != 0) {
    throw ConfigError("N - m0 = " + std::to_string(n_total - m0) +
                      " is not divisible by P in " + triple.str());
  }
  return UcpgConfig(n_total, p_parts, m0, (n_total - m0) / p_parts);
}

std::string UcpgConfig::to_string() const {
  std::ostringstream os;
  os << "(N=" << n_total_ << ", P=" << p_parts_ << ", m0=" << m0_ << ", m1=" << m1_ << ")";
  return os.str();
}

}  // namespace qwalk
