#include "saislab/sais.hpp"

#include <algorithm>
#include <numeric>

#include "saislab/error.hpp"

namespace saislab {

namespace {

constexpr Index kEmpty = -1;

struct Buckets {
  std::vector<Index> count;
  std::vector<Index> cursor;

  explicit Buckets(Letter sigma) : count(static_cast<std::size_t>(sigma), 0) {}

  void tally(const Letter* w, Index n) {
    for (Index i = 0; i < n; ++i) ++count[static_cast<std::size_t>(w[i])];
  }
  void reset_heads() {
    cursor.assign(count.size(), 0);
    Index acc = 0;
    for (std::size_t c = 0; c < count.size(); ++c) {
      cursor[c] = acc;
      acc += count[c];
    }
  }
  void reset_tails() {
    cursor.assign(count.size(), 0);
    Index acc = 0;
    for (std::size_t c = 0; c < count.size(); ++c) {
      acc += count[c];
      cursor[c] = acc;
    }
  }
};

// Left-to-right pass: seeds the last suffix (L-type under the virtual
// sentinel), then induces every L suffix from its successor.
void induce_l(const Letter* w, Index n, const std::vector<char>& is_s, std::vector<Index>& sa,
              Buckets& bk, SaisWork& work) {
  bk.reset_heads();
  sa[static_cast<std::size_t>(bk.cursor[static_cast<std::size_t>(w[n - 1])]++)] = n - 1;
  for (Index i = 0; i < n; ++i) {
    ++work.scan_steps;
    const Index j = sa[static_cast<std::size_t>(i)];
    if (j > 0 && !is_s[static_cast<std::size_t>(j - 1)]) {
      sa[static_cast<std::size_t>(bk.cursor[static_cast<std::size_t>(w[j - 1])]++)] = j - 1;
    }
  }
}

// Right-to-left pass inducing every S suffix from its successor.
void induce_s(const Letter* w, Index n, const std::vector<char>& is_s, std::vector<Index>& sa,
              Buckets& bk, SaisWork& work) {
  bk.reset_tails();
  for (Index i = n - 1; i >= 0; --i) {
    ++work.scan_steps;
    const Index j = sa[static_cast<std::size_t>(i)];
    if (j > 0 && is_s[static_cast<std::size_t>(j - 1)]) {
      sa[static_cast<std::size_t>(--bk.cursor[static_cast<std::size_t>(w[j - 1])])] = j - 1;
    }
  }
}

void sais_core(const Letter* w, Index n, Letter sigma, std::vector<Index>& sa, SaisWork& work) {
  if (n == 0) return;
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  Buckets bk(sigma);
  bk.tally(w, n);

  // Pairwise-distinct letters: the suffix array is the letter order.
  if (*std::max_element(bk.count.begin(), bk.count.end()) == 1) {
    bk.reset_heads();
    for (Index i = 0; i < n; ++i) {
      sa[static_cast<std::size_t>(bk.cursor[static_cast<std::size_t>(w[i])])] = i;
    }
    work.scan_steps += n;
    return;
  }

  // S/L types under the virtual sentinel: the last position is L.
  std::vector<char> is_s(static_cast<std::size_t>(n), 0);
  for (Index i = n - 2; i >= 0; --i) {
    is_s[static_cast<std::size_t>(i)] =
        w[i] < w[i + 1] || (w[i] == w[i + 1] && is_s[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<Index> lms;  // ascending positions
  for (Index i = 1; i < n; ++i) {
    if (is_s[static_cast<std::size_t>(i)] && !is_s[static_cast<std::size_t>(i - 1)]) {
      lms.push_back(i);
    }
  }
  const Index k = static_cast<Index>(lms.size());

  if (k == 0) {
    // No locally minimal position: pure induction sorts everything.
    std::fill(sa.begin(), sa.begin() + n, kEmpty);
    induce_l(w, n, is_s, sa, bk, work);
    induce_s(w, n, is_s, sa, bk, work);
    return;
  }

  // Stage 1: sort the unimodal (LMS) substrings by seeding the LMS
  // positions at their bucket tails and inducing twice.
  std::fill(sa.begin(), sa.begin() + n, kEmpty);
  bk.reset_tails();
  for (Index t = k - 1; t >= 0; --t) {
    const Index p = lms[static_cast<std::size_t>(t)];
    sa[static_cast<std::size_t>(--bk.cursor[static_cast<std::size_t>(w[p])])] = p;
  }
  induce_l(w, n, is_s, sa, bk, work);
  induce_s(w, n, is_s, sa, bk, work);

  // LMS positions now appear in substring order; name them.
  std::vector<Index> lms_in_order;
  lms_in_order.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < n; ++i) {
    const Index p = sa[static_cast<std::size_t>(i)];
    if (p > 0 && is_s[static_cast<std::size_t>(p)] && !is_s[static_cast<std::size_t>(p - 1)]) {
      lms_in_order.push_back(p);
    }
  }

  std::vector<Index> lms_rank(static_cast<std::size_t>(n), kEmpty);
  for (Index t = 0; t < k; ++t) lms_rank[static_cast<std::size_t>(lms[static_cast<std::size_t>(t)])] = t;

  // Substring of p spans [p, next LMS after p]; the last one ends with the
  // virtual sentinel and never equals another.
  auto substrings_equal = [&](Index p, Index q) {
    const Index rp = lms_rank[static_cast<std::size_t>(p)];
    const Index rq = lms_rank[static_cast<std::size_t>(q)];
    if (rp == k - 1 || rq == k - 1) return false;
    const Index lenp = lms[static_cast<std::size_t>(rp + 1)] - p;
    const Index lenq = lms[static_cast<std::size_t>(rq + 1)] - q;
    if (lenp != lenq) return false;
    for (Index i = 0; i <= lenp; ++i) {
      if (w[p + i] != w[q + i]) return false;
    }
    return true;
  };

  std::vector<Letter> name_of(static_cast<std::size_t>(k));
  Letter name = 0;
  name_of[static_cast<std::size_t>(lms_rank[static_cast<std::size_t>(lms_in_order[0])])] = 0;
  for (Index t = 1; t < k; ++t) {
    if (!substrings_equal(lms_in_order[static_cast<std::size_t>(t - 1)],
                          lms_in_order[static_cast<std::size_t>(t)])) {
      ++name;
    }
    name_of[static_cast<std::size_t>(lms_rank[static_cast<std::size_t>(
        lms_in_order[static_cast<std::size_t>(t)])])] = name;
  }
  const Letter reduced_sigma = name + 1;

  // Step 5: recurse only when some name repeats.
  std::vector<Index> sa1(static_cast<std::size_t>(k));
  if (reduced_sigma == k) {
    for (Index t = 0; t < k; ++t) sa1[static_cast<std::size_t>(name_of[static_cast<std::size_t>(t)])] = t;
  } else {
    sais_core(name_of.data(), k, reduced_sigma, sa1, work);
  }

  // Stage 2: seed the LMS suffixes in their final relative order, induce.
  std::fill(sa.begin(), sa.begin() + n, kEmpty);
  bk.reset_tails();
  for (Index t = k - 1; t >= 0; --t) {
    const Index p = lms[static_cast<std::size_t>(sa1[static_cast<std::size_t>(t)])];
    sa[static_cast<std::size_t>(--bk.cursor[static_cast<std::size_t>(w[p])])] = p;
  }
  induce_l(w, n, is_s, sa, bk, work);
  induce_s(w, n, is_s, sa, bk, work);
}

bool is_base_case(const Word& w) {
  return w.size() <= 1 || distinct_letter_count(w) == w.size();
}

}  // namespace

std::vector<Word> reduction_levels(const Word& w, Index max_k) {
  if (max_k < 0) throw Error(Errc::validation, "max_k must be >= 0");
  validate(w);
  std::vector<Word> levels;
  levels.push_back(w);
  for (Index t = 0; t < max_k; ++t) {
    if (is_base_case(levels.back())) break;
    levels.push_back(is_reduce(levels.back()));
  }
  return levels;
}

ReductionTrace trace_of_levels(const std::vector<Word>& levels) {
  ReductionTrace tr;
  tr.level_lengths.reserve(levels.size());
  tr.level_alphabet_sizes.reserve(levels.size());
  for (const Word& lvl : levels) {
    tr.level_lengths.push_back(lvl.size());
    tr.level_alphabet_sizes.push_back(distinct_letter_count(lvl));
  }
  tr.depth = static_cast<Index>(levels.size()) - 1;
  tr.ratios.reserve(levels.size());
  const double base = static_cast<double>(tr.level_lengths[0]);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    tr.ratios.push_back(i == 0 ? 1.0 : static_cast<double>(tr.level_lengths[i]) / base);
  }
  return tr;
}

SaisOutput sais(const Word& w) {
  validate(w);
  SaisOutput out;
  out.suffix_array.order.resize(static_cast<std::size_t>(w.size()));
  sais_core(w.letters.data(), w.size(), w.alphabet_size, out.suffix_array.order, out.work);
  // The recursion chain is always finite: lengths at least halve per level.
  out.trace = trace_of_levels(reduction_levels(w, 64));
  return out;
}

}  // namespace saislab
