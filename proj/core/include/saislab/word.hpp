#pragma once

#include <vector>

#include "saislab/types.hpp"

namespace saislab {

/// A finite word of integer letters. The sentinel is virtual: it is never
/// stored here, and the alphabet is never shifted to make room for it.
struct Word {
  std::vector<Letter> letters;
  Letter alphabet_size = 0;

  Index size() const { return static_cast<Index>(letters.size()); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word&) const = default;
};

/// Validates and builds a word. Every letter must satisfy 0 <= a < alphabet_size.
Word make_word(std::vector<Letter> letters, Letter alphabet_size);

/// Same, with alphabet_size inferred as max(letter) + 1.
Word make_word(std::vector<Letter> letters);

/// Throws Errc::validation if the word invariants do not hold.
void validate(const Word& w);

/// Number of distinct letters actually used.
Index distinct_letter_count(const Word& w);

/// The unimodal factorization of a word: factor j runs from minimal index
/// i_j to i_{j+1} inclusive; the last factor ends with the virtual sentinel,
/// materialized here as kSentinel.
struct Factorization {
  std::vector<Index> minima;
  std::vector<std::vector<Letter>> factors;
};

struct SuffixArrayResult {
  std::vector<Index> order;
  bool operator==(const SuffixArrayResult&) const = default;
};

/// Indices i with w[i-1] > w[i] whose equal run to the right ends with a
/// strict ascent. Single right-to-left pass.
std::vector<Index> locally_minimal_indices(const Word& w);

/// Expanded one-step reduction: the word of unimodal factors.
Factorization eis(const Word& w);

/// One-step reduction: each factor replaced by its dense rank under
/// lexicographic order with the sentinel below every letter and proper
/// prefixes ordered first. alphabet_size of the result is the number of
/// distinct factors.
Word is_reduce(const Word& w);

/// Comparison-sorts all suffixes. Oracle only; quadratic-or-worse is fine.
SuffixArrayResult naive_suffix_array(const Word& w);

/// Largest k admitting indices a_1<b_1<=a_2<b_2<=...<=a_2k<b_2k with strict
/// descents at odd pairs and strict ascents at even pairs. Greedy over
/// adjacent pairs; tests certify it against exhaustive search.
Index max_alternating_size(const Word& w);

/// True iff w[j] == w[j+k] whenever both j and j+k lie in [b, |w|-1-b].
bool is_periodic_except_borders(const Word& w, Index k, Index b);

}  // namespace saislab
