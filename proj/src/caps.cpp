#include "conglab/caps.hpp"

#include <cstdlib>
#include <sstream>

#include "conglab/errors.hpp"

namespace conglab {

Caps Caps::parse(const std::string& text, Caps base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("bad cap entry '" + item + "'");
    std::string key = item.substr(0, eq);
    BigInt value = parse_bigint(item.substr(eq + 1));
    if (value <= 0) throw ParseError("caps must be positive: '" + item + "'");
    if (key == "ring") {
      base.ring = to_size(value);
      if (base.ring > (std::size_t{1} << 16)) {
        throw ParseError("ring cap above 65536 is not supported by the matrix encoding");
      }
    } else if (key == "group") {
      base.group = to_size(value);
    } else if (key == "index") {
      base.index = to_size(value);
    } else if (key == "factor") {
      base.factor = value;
    } else {
      throw ParseError("unknown cap '" + key + "'");
    }
  }
  return base;
}

Caps Caps::parse(const std::string& text) { return parse(text, Caps{}); }

Caps Caps::from_environment() {
  const char* env = std::getenv("CONGLAB_CAPS");
  if (env == nullptr) return {};
  return parse(env);
}

}  // namespace conglab
