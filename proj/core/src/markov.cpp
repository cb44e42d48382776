#include "saislab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "saislab/error.hpp"

namespace saislab {

namespace {

constexpr double kRowTolerance = 1e-12;

// Gaussian elimination with partial pivoting; a is destroyed.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-300) {
      throw Error(Errc::validation, "singular linear system in chain analysis");
    }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const double inv = 1.0 / a[col][col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = acc / a[r][r];
  }
  return x;
}

// Iterative Tarjan SCC; returns component id per vertex, ids in reverse
// topological order of the condensation.
std::vector<int> tarjan_scc(const std::vector<std::vector<int>>& adj, int& num_components) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stack;
  std::vector<std::pair<int, std::size_t>> call;
  std::vector<char> on_stack(n, 0);
  int timer = 0;
  num_components = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        disc[v] = low[v] = timer++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (ei < adj[v].size()) {
        const int to = adj[v][ei++];
        if (disc[to] == -1) {
          call.emplace_back(to, 0);
        } else if (on_stack[to]) {
          low[v] = std::min(low[v], disc[to]);
        }
      } else {
        if (low[v] == disc[v]) {
          while (true) {
            const int u = stack.back();
            stack.pop_back();
            on_stack[u] = 0;
            comp[u] = num_components;
            if (u == v) break;
          }
          ++num_components;
        }
        call.pop_back();
        if (!call.empty()) {
          low[call.back().first] = std::min(low[call.back().first], low[v]);
        }
      }
    }
  }
  return comp;
}

std::vector<std::vector<int>> adjacency(const MarkovChain& chain) {
  const int n = chain.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (chain.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] > 0.0) {
        adj[static_cast<std::size_t>(s)].push_back(t);
      }
    }
  }
  return adj;
}

std::vector<double> column_apply(const MarkovChain& chain, const std::vector<double>& nu) {
  const int n = chain.size();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int y = 0; y < n; ++y) {
    const double w = nu[static_cast<std::size_t>(y)];
    if (w == 0.0) continue;
    const auto& row = chain.transition[static_cast<std::size_t>(y)];
    for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] += w * row[static_cast<std::size_t>(x)];
  }
  return out;
}

}  // namespace

void validate(const MarkovChain& chain) {
  const int n = chain.size();
  if (n == 0) throw Error(Errc::validation, "chain needs at least one state");
  for (int i = 0; i < n; ++i) {
    if (chain.states[static_cast<std::size_t>(i)] < 0) {
      throw Error(Errc::validation, "state " + std::to_string(i) + " is a negative letter id");
    }
    if (i > 0 && chain.states[static_cast<std::size_t>(i)] <= chain.states[static_cast<std::size_t>(i - 1)]) {
      throw Error(Errc::validation,
                  "states must be strictly increasing letter ids (entry " + std::to_string(i) + ")");
    }
  }
  if (static_cast<int>(chain.transition.size()) != n) {
    throw Error(Errc::validation, "transition must have one row per state");
  }
  for (int s = 0; s < n; ++s) {
    const auto& row = chain.transition[static_cast<std::size_t>(s)];
    if (static_cast<int>(row.size()) != n) {
      throw Error(Errc::validation, "transition row " + std::to_string(s) + " has wrong width");
    }
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
      const double v = row[static_cast<std::size_t>(t)];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::validation, "transition[" + std::to_string(s) + "][" + std::to_string(t) +
                                          "] = " + std::to_string(v) + " out of [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw Error(Errc::validation,
                  "transition row " + std::to_string(s) + " sums to " + std::to_string(sum));
    }
  }
  if (static_cast<int>(chain.initial.size()) != n) {
    throw Error(Errc::validation, "initial must have one mass per state");
  }
  double sum = 0.0;
  for (int s = 0; s < n; ++s) {
    const double v = chain.initial[static_cast<std::size_t>(s)];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::validation,
                  "initial[" + std::to_string(s) + "] = " + std::to_string(v) + " out of [0,1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowTolerance) {
    throw Error(Errc::validation, "initial sums to " + std::to_string(sum));
  }
}

MarkovChain make_chain(std::vector<Letter> states, std::vector<std::vector<double>> transition,
                       std::vector<double> initial) {
  MarkovChain chain{std::move(states), std::move(transition), std::move(initial)};
  validate(chain);
  return chain;
}

MarkovChain iid_chain(std::span<const double> law) {
  const int m = static_cast<int>(law.size());
  std::vector<Letter> states(static_cast<std::size_t>(m));
  std::iota(states.begin(), states.end(), Letter{0});
  std::vector<double> row(law.begin(), law.end());
  return make_chain(std::move(states),
                    std::vector<std::vector<double>>(static_cast<std::size_t>(m), row), row);
}

MarkovChain uniform_iid_chain(int m) {
  return iid_chain(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
}

MarkovChain random_irreducible_chain(int num_states, Rng& rng) {
  auto random_simplex = [&](int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& x : v) {
      x = -std::log(1.0 - rng.uniform01());
      sum += x;
    }
    for (auto& x : v) x /= sum;
    return v;
  };
  std::vector<Letter> states(static_cast<std::size_t>(num_states));
  std::iota(states.begin(), states.end(), Letter{0});
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(num_states));
  for (int s = 0; s < num_states; ++s) rows.push_back(random_simplex(num_states));
  return make_chain(std::move(states), std::move(rows), random_simplex(num_states));
}

TerminalDecomposition terminal_components(const MarkovChain& chain) {
  validate(chain);
  const int n = chain.size();
  const auto adj = adjacency(chain);
  int num_comp = 0;
  const std::vector<int> comp = tarjan_scc(adj, num_comp);

  std::vector<char> has_exit(static_cast<std::size_t>(num_comp), 0);
  for (int v = 0; v < n; ++v) {
    for (int to : adj[static_cast<std::size_t>(v)]) {
      if (comp[static_cast<std::size_t>(v)] != comp[static_cast<std::size_t>(to)]) {
        has_exit[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = 1;
      }
    }
  }

  TerminalDecomposition out;
  std::vector<int> terminal_id(static_cast<std::size_t>(num_comp), -1);
  for (int c = 0; c < num_comp; ++c) {
    if (has_exit[static_cast<std::size_t>(c)]) continue;
    terminal_id[static_cast<std::size_t>(c)] = static_cast<int>(out.components.size());
    out.components.emplace_back();
  }
  for (int v = 0; v < n; ++v) {
    const int tid = terminal_id[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    if (tid >= 0) out.components[static_cast<std::size_t>(tid)].push_back(v);
  }
  for (auto& c : out.components) std::sort(c.begin(), c.end());

  // Absorption probabilities: first-step linear system over transient states.
  std::vector<int> transient;
  std::vector<int> transient_pos(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (terminal_id[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] < 0) {
      transient_pos[static_cast<std::size_t>(v)] = static_cast<int>(transient.size());
      transient.push_back(v);
    }
  }
  const int t = static_cast<int>(transient.size());
  out.absorb_prob.assign(out.components.size(), 0.0);
  for (std::size_t kc = 0; kc < out.components.size(); ++kc) {
    std::vector<double> reach(static_cast<std::size_t>(n), 0.0);
    for (int v : out.components[kc]) reach[static_cast<std::size_t>(v)] = 1.0;
    if (t > 0) {
      std::vector<std::vector<double>> a(static_cast<std::size_t>(t),
                                         std::vector<double>(static_cast<std::size_t>(t), 0.0));
      std::vector<double> b(static_cast<std::size_t>(t), 0.0);
      for (int i = 0; i < t; ++i) {
        const int v = transient[static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
        const auto& row = chain.transition[static_cast<std::size_t>(v)];
        for (int u = 0; u < n; ++u) {
          const double p = row[static_cast<std::size_t>(u)];
          if (p == 0.0) continue;
          const int j = transient_pos[static_cast<std::size_t>(u)];
          if (j >= 0) {
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= p;
          } else {
            b[static_cast<std::size_t>(i)] += p * reach[static_cast<std::size_t>(u)];
          }
        }
      }
      const std::vector<double> sol = solve_linear(std::move(a), std::move(b));
      for (int i = 0; i < t; ++i) {
        reach[static_cast<std::size_t>(transient[static_cast<std::size_t>(i)])] =
            sol[static_cast<std::size_t>(i)];
      }
    }
    double prob = 0.0;
    for (int v = 0; v < n; ++v) {
      prob += chain.initial[static_cast<std::size_t>(v)] * reach[static_cast<std::size_t>(v)];
    }
    out.absorb_prob[kc] = prob;
  }
  return out;
}

namespace {

MarkovChain restrict_to(const MarkovChain& chain, const std::vector<int>& keep) {
  std::vector<Letter> states;
  states.reserve(keep.size());
  for (int v : keep) states.push_back(chain.states[static_cast<std::size_t>(v)]);
  std::vector<std::vector<double>> rows;
  rows.reserve(keep.size());
  for (int v : keep) {
    std::vector<double> row;
    row.reserve(keep.size());
    for (int u : keep) {
      row.push_back(chain.transition[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]);
    }
    rows.push_back(std::move(row));
  }
  // Rows of a terminal component carry no outside mass; uniform initial is a
  // placeholder (stationary analysis ignores it).
  std::vector<double> init(keep.size(), 1.0 / static_cast<double>(keep.size()));
  return make_chain(std::move(states), std::move(rows), std::move(init));
}

}  // namespace

TerminalDecomposition terminal_decomposition_with_gamma(const MarkovChain& chain, Direction dir) {
  TerminalDecomposition decomp = terminal_components(chain);
  decomp.per_component_gamma1.reserve(decomp.components.size());
  for (const auto& comp : decomp.components) {
    decomp.per_component_gamma1.push_back(gamma1(restrict_to(chain, comp), dir));
  }
  return decomp;
}

StationaryDistribution stationary(const MarkovChain& chain) {
  const TerminalDecomposition decomp = terminal_components(chain);
  if (decomp.components.size() != 1) {
    throw Error(Errc::multiple_terminal_components,
                "stationary distribution needs exactly one terminal component, found " +
                    std::to_string(decomp.components.size()));
  }
  const std::vector<int>& term = decomp.components[0];
  const int t = static_cast<int>(term.size());
  const int n = chain.size();

  std::vector<double> mass_t(static_cast<std::size_t>(t), 0.0);
  if (t == 1) {
    mass_t[0] = 1.0;
  } else if (t <= 512) {
    // Solve (M_TT^T - I) nu = 0 with the last equation replaced by sum = 1.
    std::vector<std::vector<double>> a(static_cast<std::size_t>(t),
                                       std::vector<double>(static_cast<std::size_t>(t), 0.0));
    std::vector<double> b(static_cast<std::size_t>(t), 0.0);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            chain.transition[static_cast<std::size_t>(term[static_cast<std::size_t>(j)])]
                            [static_cast<std::size_t>(term[static_cast<std::size_t>(i)])];
      }
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= 1.0;
    }
    for (int j = 0; j < t; ++j) a[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(j)] = 1.0;
    b[static_cast<std::size_t>(t - 1)] = 1.0;
    mass_t = solve_linear(std::move(a), std::move(b));
  } else {
    // Damped power iteration keeps periodic chains convergent.
    std::vector<double> nu(static_cast<std::size_t>(t), 1.0 / t);
    std::vector<double> next(static_cast<std::size_t>(t), 0.0);
    for (int iter = 0; iter < 1000000; ++iter) {
      std::fill(next.begin(), next.end(), 0.0);
      for (int j = 0; j < t; ++j) {
        const double w = nu[static_cast<std::size_t>(j)];
        const auto& row = chain.transition[static_cast<std::size_t>(term[static_cast<std::size_t>(j)])];
        for (int i = 0; i < t; ++i) {
          next[static_cast<std::size_t>(i)] +=
              w * row[static_cast<std::size_t>(term[static_cast<std::size_t>(i)])];
        }
      }
      double diff = 0.0;
      for (int i = 0; i < t; ++i) {
        next[static_cast<std::size_t>(i)] = 0.5 * (next[static_cast<std::size_t>(i)] +
                                                   nu[static_cast<std::size_t>(i)]);
        diff += std::abs(next[static_cast<std::size_t>(i)] - nu[static_cast<std::size_t>(i)]);
      }
      nu.swap(next);
      if (diff <= 1e-13) break;
    }
    mass_t = std::move(nu);
  }

  StationaryDistribution out;
  out.mass.assign(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  for (int i = 0; i < t; ++i) {
    const double v = std::max(0.0, mass_t[static_cast<std::size_t>(i)]);
    out.mass[static_cast<std::size_t>(term[static_cast<std::size_t>(i)])] = v;
    total += v;
  }
  for (auto& v : out.mass) v /= total;

  const std::vector<double> applied = column_apply(chain, out.mass);
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    residual += std::abs(out.mass[static_cast<std::size_t>(i)] - applied[static_cast<std::size_t>(i)]);
  }
  out.residual = residual;
  if (residual > 1e-10) {
    throw Error(Errc::validation, "stationary solve residual " + std::to_string(residual));
  }
  return out;
}

MarkovChain reverse_chain(const MarkovChain& chain) {
  const TerminalDecomposition decomp = terminal_components(chain);
  if (decomp.components.size() != 1) {
    throw Error(Errc::multiple_terminal_components,
                "reverse chain needs exactly one terminal component");
  }
  const StationaryDistribution nu = stationary(chain);
  const std::vector<int>& term = decomp.components[0];
  const int t = static_cast<int>(term.size());

  std::vector<Letter> states;
  std::vector<double> init;
  states.reserve(static_cast<std::size_t>(t));
  init.reserve(static_cast<std::size_t>(t));
  for (int v : term) {
    states.push_back(chain.states[static_cast<std::size_t>(v)]);
    init.push_back(nu.mass[static_cast<std::size_t>(v)]);
  }
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(t),
                                        std::vector<double>(static_cast<std::size_t>(t), 0.0));
  for (int i = 0; i < t; ++i) {
    const int x = term[static_cast<std::size_t>(i)];
    double row_sum = 0.0;
    for (int j = 0; j < t; ++j) {
      const int y = term[static_cast<std::size_t>(j)];
      const double v = nu.mass[static_cast<std::size_t>(y)] / nu.mass[static_cast<std::size_t>(x)] *
                       chain.transition[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      row_sum += v;
    }
    for (auto& v : rows[static_cast<std::size_t>(i)]) v /= row_sum;
  }
  return make_chain(std::move(states), std::move(rows), std::move(init));
}

ChainProfile profile(const MarkovChain& chain) {
  const TerminalDecomposition decomp = terminal_components(chain);
  if (decomp.components.size() != 1) {
    throw Error(Errc::multiple_terminal_components,
                "gamma analysis needs exactly one terminal component, found " +
                    std::to_string(decomp.components.size()));
  }
  ChainProfile p;
  p.terminal = decomp.components[0];
  const int n = chain.size();
  p.in_terminal.assign(static_cast<std::size_t>(n), 0);
  for (int v : p.terminal) p.in_terminal[static_cast<std::size_t>(v)] = 1;
  p.singleton_terminal = p.terminal.size() == 1;
  p.nu = stationary(chain);

  p.m_plus.assign(static_cast<std::size_t>(n), 0.0);
  p.m_up.assign(static_cast<std::size_t>(n), 0.0);
  p.m_down.assign(static_cast<std::size_t>(n), 0.0);
  p.nu_bar_up.assign(static_cast<std::size_t>(n), 0.0);
  p.nu_bar_down.assign(static_cast<std::size_t>(n), 0.0);
  p.nu_plus.assign(static_cast<std::size_t>(n), 0.0);

  for (int x = 0; x < n; ++x) {
    const auto& row = chain.transition[static_cast<std::size_t>(x)];
    double up = 0.0, down = 0.0;
    for (int y = 0; y < n; ++y) {
      if (y > x) up += row[static_cast<std::size_t>(y)];
      if (y < x) down += row[static_cast<std::size_t>(y)];
    }
    p.m_plus[static_cast<std::size_t>(x)] = up;
    const double self = row[static_cast<std::size_t>(x)];
    if (self < 1.0) {
      p.m_up[static_cast<std::size_t>(x)] = up / (1.0 - self);
      p.m_down[static_cast<std::size_t>(x)] = down / (1.0 - self);
    }
  }
  for (int x = 0; x < n; ++x) {
    const double self = chain.transition[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)];
    double up = 0.0, down = 0.0, plus = 0.0;
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      const double flow = chain.transition[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] *
                          p.nu.mass[static_cast<std::size_t>(y)];
      if (y > x) {
        up += flow;
        plus += flow;
      } else {
        down += flow;
      }
    }
    p.nu_plus[static_cast<std::size_t>(x)] = plus;
    if (self < 1.0) {
      p.nu_bar_up[static_cast<std::size_t>(x)] = up / (1.0 - self);
      p.nu_bar_down[static_cast<std::size_t>(x)] = down / (1.0 - self);
    }
  }
  return p;
}

namespace {

AnnotatedChain annotate_right_to_left(const MarkovChain& chain, const ChainProfile& p) {
  const int n = chain.size();
  const std::optional<Letter> sink =
      p.singleton_terminal ? std::optional<Letter>(chain.states[static_cast<std::size_t>(p.terminal[0])])
                           : std::nullopt;
  const int sink_state = p.singleton_terminal ? p.terminal[0] : -1;

  AnnotatedChain ac;
  ac.direction = Direction::right_to_left;
  ac.merged_sink = sink;
  ac.states.push_back({0, true, true, false});

  std::vector<int> id_up(static_cast<std::size_t>(n), -1), id_down(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (s == sink_state) {
      const int id = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], false, false, true});
      id_up[static_cast<std::size_t>(s)] = id_down[static_cast<std::size_t>(s)] = id;
    } else {
      id_up[static_cast<std::size_t>(s)] = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], true, false, false});
      id_down[static_cast<std::size_t>(s)] = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], false, false, false});
    }
  }

  const int m = static_cast<int>(ac.states.size());
  ac.transition.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  ac.initial.assign(static_cast<std::size_t>(m), 0.0);
  ac.initial[0] = 1.0;

  // Start state emits the last letter of the word, which is never
  // non-decreasing.
  for (int y = 0; y < n; ++y) {
    ac.transition[0][static_cast<std::size_t>(id_down[static_cast<std::size_t>(y)])] +=
        chain.initial[static_cast<std::size_t>(y)];
  }
  for (int x = 0; x < n; ++x) {
    const auto& row = chain.transition[static_cast<std::size_t>(x)];
    for (const bool up : {true, false}) {
      const int from = up ? id_up[static_cast<std::size_t>(x)] : id_down[static_cast<std::size_t>(x)];
      auto& out = ac.transition[static_cast<std::size_t>(from)];
      for (int y = 0; y < n; ++y) {
        const double pxy = row[static_cast<std::size_t>(y)];
        if (pxy == 0.0) continue;
        int to;
        if (y > x) {
          to = id_down[static_cast<std::size_t>(y)];
        } else if (y < x) {
          to = id_up[static_cast<std::size_t>(y)];
        } else {
          to = up ? id_up[static_cast<std::size_t>(y)] : id_down[static_cast<std::size_t>(y)];
        }
        out[static_cast<std::size_t>(to)] += pxy;
      }
      if (x == sink_state) break;  // merged entry appears once
    }
  }

  ac.stationary_mass.assign(static_cast<std::size_t>(m), 0.0);
  if (p.singleton_terminal) {
    ac.stationary_mass[static_cast<std::size_t>(id_up[static_cast<std::size_t>(sink_state)])] = 1.0;
  } else {
    for (int x = 0; x < n; ++x) {
      ac.stationary_mass[static_cast<std::size_t>(id_up[static_cast<std::size_t>(x)])] =
          p.nu_bar_up[static_cast<std::size_t>(x)];
      ac.stationary_mass[static_cast<std::size_t>(id_down[static_cast<std::size_t>(x)])] =
          p.nu_bar_down[static_cast<std::size_t>(x)];
    }
  }
  return ac;
}

AnnotatedChain annotate_left_to_right(const MarkovChain& chain, const ChainProfile& p) {
  const int n = chain.size();
  const int sink_state = p.singleton_terminal ? p.terminal[0] : -1;

  AnnotatedChain ac;
  ac.direction = Direction::left_to_right;
  if (sink_state >= 0) ac.merged_sink = chain.states[static_cast<std::size_t>(sink_state)];

  std::vector<int> id_up(static_cast<std::size_t>(n), -1), id_down(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (s == sink_state) {
      const int id = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], false, false, true});
      id_up[static_cast<std::size_t>(s)] = id_down[static_cast<std::size_t>(s)] = id;
      continue;
    }
    if (p.m_up[static_cast<std::size_t>(s)] > 0.0) {
      id_up[static_cast<std::size_t>(s)] = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], true, false, false});
    }
    if (p.m_down[static_cast<std::size_t>(s)] > 0.0) {
      id_down[static_cast<std::size_t>(s)] = static_cast<int>(ac.states.size());
      ac.states.push_back({chain.states[static_cast<std::size_t>(s)], false, false, false});
    }
  }

  const int m = static_cast<int>(ac.states.size());
  ac.transition.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  ac.initial.assign(static_cast<std::size_t>(m), 0.0);

  for (int x = 0; x < n; ++x) {
    if (x == sink_state) {
      ac.initial[static_cast<std::size_t>(id_down[static_cast<std::size_t>(x)])] +=
          chain.initial[static_cast<std::size_t>(x)];
      continue;
    }
    if (id_up[static_cast<std::size_t>(x)] >= 0) {
      ac.initial[static_cast<std::size_t>(id_up[static_cast<std::size_t>(x)])] =
          chain.initial[static_cast<std::size_t>(x)] * p.m_up[static_cast<std::size_t>(x)];
    }
    if (id_down[static_cast<std::size_t>(x)] >= 0) {
      ac.initial[static_cast<std::size_t>(id_down[static_cast<std::size_t>(x)])] =
          chain.initial[static_cast<std::size_t>(x)] * p.m_down[static_cast<std::size_t>(x)];
    }
  }

  for (int x = 0; x < n; ++x) {
    const auto& row = chain.transition[static_cast<std::size_t>(x)];
    if (x == sink_state) {
      const int from = id_down[static_cast<std::size_t>(x)];
      ac.transition[static_cast<std::size_t>(from)][static_cast<std::size_t>(from)] = 1.0;
      continue;
    }
    for (const bool up : {true, false}) {
      const int from = up ? id_up[static_cast<std::size_t>(x)] : id_down[static_cast<std::size_t>(x)];
      if (from < 0) continue;
      const double norm = up ? p.m_up[static_cast<std::size_t>(x)] : p.m_down[static_cast<std::size_t>(x)];
      auto& out = ac.transition[static_cast<std::size_t>(from)];
      for (int y = 0; y < n; ++y) {
        const double pxy = row[static_cast<std::size_t>(y)];
        if (pxy == 0.0) continue;
        if (y == x) {
          out[static_cast<std::size_t>(from)] += pxy;
          continue;
        }
        if ((up && y < x) || (!up && y > x)) continue;  // flag forbids this move
        if (y == sink_state) {
          out[static_cast<std::size_t>(id_down[static_cast<std::size_t>(y)])] += pxy / norm;
          continue;
        }
        for (const bool to_up : {true, false}) {
          const int to = to_up ? id_up[static_cast<std::size_t>(y)] : id_down[static_cast<std::size_t>(y)];
          if (to < 0) continue;
          const double flag =
              to_up ? p.m_up[static_cast<std::size_t>(y)] : p.m_down[static_cast<std::size_t>(y)];
          out[static_cast<std::size_t>(to)] += flag * pxy / norm;
        }
      }
    }
  }

  ac.stationary_mass.assign(static_cast<std::size_t>(m), 0.0);
  if (p.singleton_terminal) {
    ac.stationary_mass[static_cast<std::size_t>(id_down[static_cast<std::size_t>(sink_state)])] = 1.0;
  } else {
    for (int x = 0; x < n; ++x) {
      if (id_up[static_cast<std::size_t>(x)] >= 0) {
        ac.stationary_mass[static_cast<std::size_t>(id_up[static_cast<std::size_t>(x)])] =
            p.nu.mass[static_cast<std::size_t>(x)] * p.m_up[static_cast<std::size_t>(x)];
      }
      if (id_down[static_cast<std::size_t>(x)] >= 0) {
        ac.stationary_mass[static_cast<std::size_t>(id_down[static_cast<std::size_t>(x)])] =
            p.nu.mass[static_cast<std::size_t>(x)] * p.m_down[static_cast<std::size_t>(x)];
      }
    }
  }
  return ac;
}

}  // namespace

AnnotatedChain annotate(const MarkovChain& chain, Direction dir) {
  const ChainProfile p = profile(chain);
  AnnotatedChain ac = dir == Direction::right_to_left ? annotate_right_to_left(chain, p)
                                                      : annotate_left_to_right(chain, p);

  const int m = static_cast<int>(ac.states.size());
  for (int s = 0; s < m; ++s) {
    double sum = 0.0;
    for (double v : ac.transition[static_cast<std::size_t>(s)]) sum += v;
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw Error(Errc::validation,
                  "annotated row " + std::to_string(s) + " sums to " + std::to_string(sum));
    }
  }

  // Closed-form stationary must agree with a direct fixed-point solve.
  std::vector<Letter> ids(static_cast<std::size_t>(m));
  std::iota(ids.begin(), ids.end(), Letter{0});
  const MarkovChain lifted = make_chain(std::move(ids), ac.transition, ac.initial);
  const StationaryDistribution solved = stationary(lifted);
  double gap = 0.0;
  for (int s = 0; s < m; ++s) {
    gap = std::max(gap, std::abs(solved.mass[static_cast<std::size_t>(s)] -
                                 ac.stationary_mass[static_cast<std::size_t>(s)]));
  }
  ac.fixed_point_gap = gap;
  if (gap > 1e-10) {
    throw Error(Errc::validation,
                "annotated stationary closed form disagrees with solve by " + std::to_string(gap));
  }
  return ac;
}

double gamma1(const MarkovChain& chain, Direction dir) {
  const ChainProfile p = profile(chain);
  if (p.singleton_terminal) return 0.0;
  double g = 0.0;
  if (dir == Direction::right_to_left) {
    for (int x : p.terminal) {
      g += p.m_plus[static_cast<std::size_t>(x)] * p.nu_bar_up[static_cast<std::size_t>(x)];
    }
  } else {
    for (int x : p.terminal) {
      g += p.nu_plus[static_cast<std::size_t>(x)] * p.m_up[static_cast<std::size_t>(x)];
    }
  }
  return g;
}

double gamma1_iid(std::span<const double> law) {
  double sum = 0.0;
  int positive = 0;
  for (double p : law) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::validation, "law mass out of [0,1]");
    sum += p;
    if (p > 0.0) ++positive;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::validation, "law sums to " + std::to_string(sum));
  }
  if (positive < 2) {
    throw Error(Errc::degenerate_law,
                "law concentrates on a single letter; every reduction is empty (gamma_1 = 0)");
  }
  const int m = static_cast<int>(law.size());
  double gamma = 0.0;
  double tail = 0.0;  // P(X > b), built from the top
  for (int b = m - 1; b >= 0; --b) {
    const double p = law[static_cast<std::size_t>(b)];
    if (p > 0.0) gamma += p * tail * tail / (1.0 - p);
    tail += p;
  }
  return gamma;
}

Word sample_word(const MarkovChain& chain, Direction dir, Index length, std::uint64_t seed) {
  validate(chain);
  if (length < 0) throw Error(Errc::validation, "length must be >= 0");
  const int n = chain.size();
  std::vector<std::vector<double>> row_cum;
  row_cum.reserve(static_cast<std::size_t>(n));
  for (const auto& row : chain.transition) row_cum.push_back(cumulative(row));
  const std::vector<double> init_cum = cumulative(chain.initial);

  std::vector<Letter> letters(static_cast<std::size_t>(length));
  Rng rng(seed);
  if (length > 0) {
    std::size_t s = sample_cumulative(init_cum, rng.uniform01());
    if (dir == Direction::right_to_left) {
      letters[static_cast<std::size_t>(length - 1)] = chain.states[s];
      for (Index pos = length - 2; pos >= 0; --pos) {
        s = sample_cumulative(row_cum[s], rng.uniform01());
        letters[static_cast<std::size_t>(pos)] = chain.states[s];
      }
    } else {
      letters[0] = chain.states[s];
      for (Index pos = 1; pos < length; ++pos) {
        s = sample_cumulative(row_cum[s], rng.uniform01());
        letters[static_cast<std::size_t>(pos)] = chain.states[s];
      }
    }
  }
  return make_word(std::move(letters), chain.states.back() + 1);
}

}  // namespace saislab
