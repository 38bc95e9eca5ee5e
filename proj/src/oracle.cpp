#include "gstarx/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gstarx/errors.hpp"
#include "gstarx/numeric.hpp"

namespace gstarx {

namespace {

/// Read-only view of a payoff table as a characteristic function.
class TableView : public CharacteristicFunction {
 public:
  TableView(const std::vector<double>& table, int players)
      : CharacteristicFunction(players), table_(table) {}

 protected:
  double evaluate(const Coalition& s) const override {
    return table_[s.low_mask()];
  }

 private:
  const std::vector<double>& table_;
};

}  // namespace

std::vector<double> limit_game_bruteforce(const Graph& g,
                                          const CharacteristicFunction& v,
                                          double tau, double tol,
                                          int max_iterations) {
  const int n = g.node_count();
  if (n > 10)
    throw ExactCapExceededError("limit-game brute force is capped at 10 players");
  const std::uint64_t size = std::uint64_t{1} << n;

  std::vector<double> table(size, 0.0);
  for (std::uint64_t mask = 1; mask < size; ++mask)
    table[mask] = v(Coalition::from_mask(mask));

  std::vector<double> next(size, 0.0);
  for (int it = 0; it < max_iterations; ++it) {
    TableView current(table, n);
    double delta = 0.0;
    for (std::uint64_t mask = 1; mask < size; ++mask) {
      next[mask] =
          associated_payoff(current, g, Coalition::from_mask(mask), tau);
      delta = std::max(delta, std::abs(next[mask] - table[mask]));
    }
    table.swap(next);
    if (delta < tol) return table;
  }
  throw NoConvergenceError("limit-game brute force did not settle within " +
                           std::to_string(max_iterations) + " applications");
}

ValueVector shapley_permutation_bruteforce(const CharacteristicFunction& v,
                                           int cap) {
  const int n = v.players();
  if (n > cap)
    throw ExactCapExceededError("permutation brute force is capped at " +
                                std::to_string(cap) + " players");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<CompensatedSum> acc(n);
  std::uint64_t permutations = 0;
  do {
    Coalition built;
    double previous = 0.0;
    for (int player : order) {
      built.insert(player);
      const double now = v(built);
      acc[player].add(now - previous);
      previous = now;
    }
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));

  ValueVector out;
  out.method = "shapley-permutation";
  out.phi.resize(n);
  for (int i = 0; i < n; ++i)
    out.phi[i] = acc[i].value() / static_cast<double>(permutations);
  return out;
}

std::map<std::uint64_t, double> linear_weights(const Graph& g, int i,
                                               const LinearSolverFn& solver,
                                               int cap) {
  const int n = g.node_count();
  if (n > cap)
    throw ExactCapExceededError("linear-weight extraction is capped at " +
                                std::to_string(cap) + " players");
  if (i < 0 || i >= n)
    throw NodeOutOfRangeError("node " + std::to_string(i) +
                              " outside the graph");

  const std::uint64_t size = std::uint64_t{1} << n;
  std::map<std::uint64_t, double> weights;
  for (std::uint64_t mask = 1; mask < size; ++mask) {
    TabularGame::Table entries;
    entries.emplace(Coalition::from_mask(mask), 1.0);
    TabularGame indicator(n, std::move(entries), 0.0);
    weights[mask] = solver(g, indicator)[i];
  }
  return weights;
}

std::map<std::uint64_t, double> marginal_weights(
    const std::map<std::uint64_t, double>& raw, int i) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  std::map<std::uint64_t, double> out;
  for (const auto& [mask, w] : raw) {
    if (mask & bit) out[mask & ~bit] = w;
  }
  return out;
}

}  // namespace gstarx
