#pragma once

#include <cstddef>
#include <string>

#include "conglab/bigint.hpp"

namespace conglab {

/// Size limits shared by every finite computation.
struct Caps {
  std::size_t ring = std::size_t{1} << 16;   // |D/q|
  std::size_t group = 5'000'000;             // |SL2(D/q)| and closures
  BigInt factor = BigInt(1) << 64;           // norms handed to trial division
  std::size_t index = 12;                    // low-index enumeration depth

  /// Parses "ring=N,group=N,factor=N,index=N" (any subset, any order).
  static Caps parse(const std::string& text, Caps base);
  static Caps parse(const std::string& text);
  /// Defaults overridden by the CONGLAB_CAPS environment variable, if set.
  static Caps from_environment();
};

}  // namespace conglab
