#include "saislab/word.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "saislab/error.hpp"

namespace saislab {

Word make_word(std::vector<Letter> letters, Letter alphabet_size) {
  Word w{std::move(letters), alphabet_size};
  validate(w);
  return w;
}

Word make_word(std::vector<Letter> letters) {
  Letter mx = -1;
  for (Letter a : letters) mx = std::max(mx, a);
  return make_word(std::move(letters), mx + 1);
}

void validate(const Word& w) {
  if (w.size() >= kMaxWordLength) {
    throw Error(Errc::malformed_input, "word length " + std::to_string(w.size()) +
                                           " exceeds the 2^40 ingestion limit");
  }
  if (!w.empty() && w.alphabet_size < 1) {
    throw Error(Errc::validation, "non-empty word needs alphabet_size >= 1");
  }
  for (Index i = 0; i < w.size(); ++i) {
    const Letter a = w.letters[i];
    if (a < 0 || a >= w.alphabet_size) {
      throw Error(Errc::validation, "letter " + std::to_string(a) + " at position " +
                                        std::to_string(i) + " outside [0, " +
                                        std::to_string(w.alphabet_size) + ")");
    }
  }
}

Index distinct_letter_count(const Word& w) {
  if (w.empty()) return 0;
  if (w.alphabet_size <= 4 * w.size()) {
    std::vector<char> seen(static_cast<std::size_t>(w.alphabet_size), 0);
    Index count = 0;
    for (Letter a : w.letters) {
      if (!seen[static_cast<std::size_t>(a)]) {
        seen[static_cast<std::size_t>(a)] = 1;
        ++count;
      }
    }
    return count;
  }
  std::unordered_set<Letter> seen(w.letters.begin(), w.letters.end());
  return static_cast<Index>(seen.size());
}

std::vector<Index> locally_minimal_indices(const Word& w) {
  const Index n = w.size();
  std::vector<Index> out;
  if (n < 3) return out;
  const auto& a = w.letters;
  bool nondecreasing = false;  // position n-1 never is
  for (Index i = n - 2; i >= 1; --i) {
    if (a[i] < a[i + 1]) {
      nondecreasing = true;
    } else if (a[i] > a[i + 1]) {
      nondecreasing = false;
    }
    if (nondecreasing && a[i - 1] > a[i]) out.push_back(i);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Factorization eis(const Word& w) {
  Factorization f;
  f.minima = locally_minimal_indices(w);
  const Index k = static_cast<Index>(f.minima.size());
  f.factors.reserve(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const Index begin = f.minima[static_cast<std::size_t>(j)];
    const Index end = (j + 1 < k) ? f.minima[static_cast<std::size_t>(j + 1)] : w.size() - 1;
    std::vector<Letter> factor(w.letters.begin() + begin, w.letters.begin() + end + 1);
    if (j + 1 == k) factor.push_back(kSentinel);
    f.factors.push_back(std::move(factor));
  }
  return f;
}

namespace {

// Factor view into a word; the last factor carries the virtual sentinel.
struct FactorRef {
  Index begin;
  Index end;  // inclusive
  bool sentinel;
};

// Three-way compare of factors over A u {$}: $ below every letter, proper
// prefixes first. kSentinel = -1 makes both rules plain integer comparisons.
int compare_factors(const std::vector<Letter>& a, const FactorRef& x, const FactorRef& y) {
  const Index lx = x.end - x.begin + 1 + (x.sentinel ? 1 : 0);
  const Index ly = y.end - y.begin + 1 + (y.sentinel ? 1 : 0);
  const Index m = std::min(lx, ly);
  for (Index i = 0; i < m; ++i) {
    const Letter va = (x.begin + i <= x.end) ? a[static_cast<std::size_t>(x.begin + i)] : kSentinel;
    const Letter vb = (y.begin + i <= y.end) ? a[static_cast<std::size_t>(y.begin + i)] : kSentinel;
    if (va != vb) return va < vb ? -1 : 1;
  }
  if (lx != ly) return lx < ly ? -1 : 1;
  return 0;
}

}  // namespace

Word is_reduce(const Word& w) {
  const std::vector<Index> minima = locally_minimal_indices(w);
  const Index k = static_cast<Index>(minima.size());
  if (k == 0) return Word{{}, 0};

  std::vector<FactorRef> refs(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const Index begin = minima[static_cast<std::size_t>(j)];
    const Index end = (j + 1 < k) ? minima[static_cast<std::size_t>(j + 1)] : w.size() - 1;
    refs[static_cast<std::size_t>(j)] = FactorRef{begin, end, j + 1 == k};
  }

  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    return compare_factors(w.letters, refs[static_cast<std::size_t>(x)],
                           refs[static_cast<std::size_t>(y)]) < 0;
  });

  std::vector<Letter> ranks(static_cast<std::size_t>(k));
  Letter rank = 0;
  ranks[static_cast<std::size_t>(order[0])] = 0;
  for (Index t = 1; t < k; ++t) {
    if (compare_factors(w.letters, refs[static_cast<std::size_t>(order[t - 1])],
                        refs[static_cast<std::size_t>(order[t])]) != 0) {
      ++rank;
    }
    ranks[static_cast<std::size_t>(order[t])] = rank;
  }
  return Word{std::move(ranks), rank + 1};
}

SuffixArrayResult naive_suffix_array(const Word& w) {
  SuffixArrayResult res;
  res.order.resize(static_cast<std::size_t>(w.size()));
  std::iota(res.order.begin(), res.order.end(), Index{0});
  const auto& a = w.letters;
  std::sort(res.order.begin(), res.order.end(), [&](Index i, Index j) {
    return std::lexicographical_compare(a.begin() + i, a.end(), a.begin() + j, a.end());
  });
  return res;
}

Index max_alternating_size(const Word& w) {
  const auto& a = w.letters;
  Index count = 0;
  bool want_descent = true;
  for (Index i = 1; i < w.size(); ++i) {
    if (want_descent) {
      if (a[static_cast<std::size_t>(i - 1)] > a[static_cast<std::size_t>(i)]) want_descent = false;
    } else {
      if (a[static_cast<std::size_t>(i - 1)] < a[static_cast<std::size_t>(i)]) {
        want_descent = true;
        ++count;
      }
    }
  }
  return count;
}

bool is_periodic_except_borders(const Word& w, Index k, Index b) {
  if (k < 1) throw Error(Errc::validation, "period k must be >= 1");
  if (b < 0) throw Error(Errc::validation, "border b must be >= 0");
  const Index n = w.size();
  for (Index j = b; j + k <= n - 1 - b; ++j) {
    if (w.letters[static_cast<std::size_t>(j)] != w.letters[static_cast<std::size_t>(j + k)]) {
      return false;
    }
  }
  return true;
}

}  // namespace saislab
