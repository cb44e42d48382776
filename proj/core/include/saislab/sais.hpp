#pragma once

#include <vector>

#include "saislab/word.hpp"

namespace saislab {

/// Per-level instrumentation of the reduction pipeline.
///
/// depth counts reduction applications: it equals level_lengths.size() - 1,
/// so a word whose first reduced form already has pairwise-distinct letters
/// has depth 1 (one reduction was computed, none was needed below it).
struct ReductionTrace {
  std::vector<Index> level_lengths;         // |is^0(w)|, |is^1(w)|, ...
  std::vector<Index> level_alphabet_sizes;  // distinct letters per level
  Index depth = 0;
  std::vector<double> ratios;  // level_lengths[k] / level_lengths[0]
};

struct SaisWork {
  Index scan_steps = 0;  // induced-sort scan iterations over all levels
};

struct SaisOutput {
  SuffixArrayResult suffix_array;
  ReductionTrace trace;
  SaisWork work;
};

/// Full recursive suffix-array construction by induced sorting, plus the
/// reduction trace of the word. The suffix array is exact (tests gate it
/// against the comparison-sort oracle); induced sorting runs in time linear
/// in |w| per level.
SaisOutput sais(const Word& w);

/// [w, is(w), is^2(w), ...]: stops after max_k reductions, or earlier at a
/// base case (length <= 1 or pairwise-distinct letters).
std::vector<Word> reduction_levels(const Word& w, Index max_k);

/// Trace assembled from a reduction chain.
ReductionTrace trace_of_levels(const std::vector<Word>& levels);

}  // namespace saislab
