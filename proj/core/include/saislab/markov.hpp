#pragma once

#include <optional>
#include <span>
#include <vector>

#include "saislab/rng.hpp"
#include "saislab/types.hpp"
#include "saislab/word.hpp"

namespace saislab {

/// A finite Markov chain over letter states. transition is row-stochastic:
/// transition[s][t] is the probability of state t given current state s.
///
/// Stationarity follows the column convention nu'(x) = sum_y nu(y) M(y,x);
/// rows are stored row-stochastic and the product is written out explicitly
/// wherever it is applied.
struct MarkovChain {
  std::vector<Letter> states;  // strictly increasing letter ids
  std::vector<std::vector<double>> transition;
  std::vector<double> initial;

  int size() const { return static_cast<int>(states.size()); }
};

void validate(const MarkovChain& chain);
MarkovChain make_chain(std::vector<Letter> states, std::vector<std::vector<double>> transition,
                       std::vector<double> initial);

/// i.i.d. chain over letters 0..|law|-1: every row and the initial
/// distribution equal the law.
MarkovChain iid_chain(std::span<const double> law);
MarkovChain uniform_iid_chain(int m);

/// All-entries-positive random chain (rows and initial drawn as normalized
/// exponentials), hence irreducible.
MarkovChain random_irreducible_chain(int num_states, Rng& rng);

struct StationaryDistribution {
  std::vector<double> mass;  // indexed like states; zero outside the terminal component
  double residual = 0.0;     // ||nu - M nu||_1 achieved
};

struct TerminalDecomposition {
  std::vector<std::vector<int>> components;  // state indices per terminal SCC
  std::vector<double> absorb_prob;
  std::vector<double> per_component_gamma1;  // filled by the _with_gamma variant
};

/// Terminal strongly connected components and their absorption
/// probabilities from the chain's initial distribution.
TerminalDecomposition terminal_components(const MarkovChain& chain);

/// Same, plus gamma_1 computed within each terminal component.
TerminalDecomposition terminal_decomposition_with_gamma(const MarkovChain& chain, Direction dir);

/// Stationary distribution of a chain with exactly one terminal component.
/// Direct linear solve up to 512 terminal states, damped power iteration
/// beyond. Throws Errc::multiple_terminal_components otherwise.
StationaryDistribution stationary(const MarkovChain& chain);

/// Time reversal restricted to the terminal component, with the stationary
/// distribution as initial: M_rev(x,y) = nu(y)/nu(x) * M(y,x).
MarkovChain reverse_chain(const MarkovChain& chain);

/// Per-letter quantities shared by the gamma machinery. Everything indexed
/// like chain.states; values vanish off the terminal component.
struct ChainProfile {
  std::vector<int> terminal;
  std::vector<char> in_terminal;
  bool singleton_terminal = false;
  StationaryDistribution nu;
  std::vector<double> m_plus;   // sum_{y>x} M(x,y)
  std::vector<double> m_up;     // sum_{y>x} M(x,y) / (1 - M(x,x))
  std::vector<double> m_down;   // sum_{y<x} M(x,y) / (1 - M(x,x))
  std::vector<double> nu_bar_up, nu_bar_down;  // right-to-left annotated stationary
  std::vector<double> nu_plus;  // sum_{y>x} nu(y) M(y,x)
};
ChainProfile profile(const MarkovChain& chain);

/// The (letter, direction-flag) lifting of a chain. In right-to-left mode
/// state 0 is the start state; a size-one terminal component collapses its
/// two flagged states into one sink entry.
struct AnnotatedChain {
  struct State {
    Letter letter = 0;
    bool up = false;
    bool start = false;
    bool merged = false;
  };
  Direction direction = Direction::right_to_left;
  std::vector<State> states;
  std::vector<std::vector<double>> transition;
  std::vector<double> initial;
  std::vector<double> stationary_mass;  // closed form, checked against a direct solve
  double fixed_point_gap = 0.0;         // max abs difference vs the direct solve
  std::optional<Letter> merged_sink;
};
AnnotatedChain annotate(const MarkovChain& chain, Direction dir);

/// Analytic density of locally minimal indices in words generated by the
/// chain. Zero for a size-one terminal component.
double gamma1(const MarkovChain& chain, Direction dir);

/// Closed form for i.i.d. letters: sum_b p_b P(X>b)^2 / (1-p_b).
/// Throws Errc::degenerate_law when fewer than two letters carry mass.
double gamma1_iid(std::span<const double> law);

/// Deterministic sampling; right-to-left mode fills positions n-1 down to 0.
Word sample_word(const MarkovChain& chain, Direction dir, Index length, std::uint64_t seed);

}  // namespace saislab
