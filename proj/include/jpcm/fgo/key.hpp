#pragma once

#include <cstdint>
#include <string>

namespace jpcm::fgo {

enum class Kind : std::uint8_t { State = 0, Input = 1 };

// Variable identifier. Indices may be negative (estimation history).
struct Key {
  Kind kind = Kind::State;
  std::int32_t index = 0;
};

// Column order everywhere: time-ascending, state before input at equal index.
constexpr bool operator<(Key a, Key b) {
  if (a.index != b.index) return a.index < b.index;
  return a.kind < b.kind;
}
constexpr bool operator==(Key a, Key b) {
  return a.kind == b.kind && a.index == b.index;
}

constexpr Key state_key(std::int32_t i) { return Key{Kind::State, i}; }
constexpr Key input_key(std::int32_t i) { return Key{Kind::Input, i}; }

inline std::string to_string(Key k) {
  return (k.kind == Kind::State ? "x(" : "u(") + std::to_string(k.index) + ")";
}

}  // namespace jpcm::fgo
