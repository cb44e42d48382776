#pragma once

#include <cstdint>

namespace saislab {

/// Letters are dense non-negative integers; their natural order is the
/// alphabet order. 64-bit everywhere so reduced alphabets never overflow.
using Letter = std::int64_t;
using Index = std::int64_t;

/// Virtual end-of-word marker. Never stored inside a Word; it only appears
/// in materialized factors, where its value (-1) sorts below every letter.
inline constexpr Letter kSentinel = -1;

/// Ingestion limit: words of 2^40 letters or more are rejected.
inline constexpr Index kMaxWordLength = Index{1} << 40;

/// Generation order of a Markov-sampled word.
enum class Direction { right_to_left, left_to_right };

inline const char* direction_name(Direction d) {
  return d == Direction::right_to_left ? "rl" : "lr";
}

}  // namespace saislab
