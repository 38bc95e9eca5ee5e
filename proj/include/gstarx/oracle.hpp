#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>

#include "gstarx/graph.hpp"
#include "gstarx/payoff.hpp"
#include "gstarx/values.hpp"

namespace gstarx {

// Brute-force references. Deliberately single-threaded, table-driven, and
// independent of the matrix machinery so the two routes can check each other.

/// Fixed point of the surplus-allocation transform, obtained by applying
/// associated_payoff to the whole payoff table until it stops moving.
/// Returned table is indexed by coalition mask; entry 0 stays 0.
std::vector<double> limit_game_bruteforce(const Graph& g,
                                          const CharacteristicFunction& v,
                                          double tau, double tol = 1e-12,
                                          int max_iterations = 200000);

/// Shapley value as the average marginal contribution over all n! player
/// orderings.
ValueVector shapley_permutation_bruteforce(const CharacteristicFunction& v,
                                           int cap = 8);

/// Any solver that is linear in the characteristic function.
using LinearSolverFn =
    std::function<Eigen::VectorXd(const Graph&, const CharacteristicFunction&)>;

/// Recovers phi_i as a linear functional of the payoff table by solving the
/// 2^n - 1 indicator games: the returned map sends each nonempty coalition
/// mask T to the weight of v(T) in phi_i.
std::map<std::uint64_t, double> linear_weights(const Graph& g, int i,
                                               const LinearSolverFn& solver,
                                               int cap = 8);

/// Reads the raw weights as weights on marginal contributions m(i, S): the
/// weight of m(i, S) is the raw weight of v(S + i). Keys are the masks of S
/// over the other players, including the empty set.
std::map<std::uint64_t, double> marginal_weights(
    const std::map<std::uint64_t, double>& raw, int i);

}  // namespace gstarx
