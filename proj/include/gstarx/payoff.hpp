#pragma once

#include <Eigen/Dense>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gstarx/coalition.hpp"
#include "gstarx/graph.hpp"

namespace gstarx {

/// Characteristic function of a cooperative game: a deterministic payoff per
/// coalition with v(empty) = 0. Evaluations are memoized; concurrent calls
/// are safe and insertion of an already-present coalition is idempotent.
class CharacteristicFunction {
 public:
  explicit CharacteristicFunction(int players);
  virtual ~CharacteristicFunction() = default;

  int players() const { return players_; }

  double value(const Coalition& s) const;
  double operator()(const Coalition& s) const { return value(s); }

 protected:
  /// Payoff of a nonempty coalition; never sees the empty set.
  virtual double evaluate(const Coalition& s) const = 0;

 private:
  int players_;
  mutable std::unordered_map<Coalition, double, Coalition::Hash> memo_;
  mutable std::mutex memo_mutex_;
};

/// v(S) = 1 iff T is contained in S.
class UnanimityGame : public CharacteristicFunction {
 public:
  UnanimityGame(int players, Coalition t);
  const Coalition& carrier() const { return t_; }

 protected:
  double evaluate(const Coalition& s) const override {
    return t_.is_subset_of(s) ? 1.0 : 0.0;
  }

 private:
  Coalition t_;
};

/// Lookup-backed game. Without a default value the table must cover every
/// nonempty coalition; an empty-coalition entry must be zero.
class TabularGame : public CharacteristicFunction {
 public:
  using Table = std::unordered_map<Coalition, double, Coalition::Hash>;

  TabularGame(int players, Table entries,
              std::optional<double> default_value = std::nullopt);

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  Table entries_;
  std::optional<double> default_value_;
};

/// Black-box graph classifier: maps a graph to a one-sum probability vector.
class GraphScorer {
 public:
  virtual ~GraphScorer() = default;
  virtual Eigen::VectorXd forward(const Graph& g) const = 0;
  virtual int class_count() const = 0;
};

/// Minimal message-passing classifier. Each layer rectifies
/// W_l * (h_u + sum of neighbor embeddings); the readout pools node
/// embeddings (mean or max), applies a linear map, and softmaxes.
struct ToyMpModel {
  enum class Pooling { kMean, kMax };

  std::vector<Eigen::MatrixXd> layers;  // W_l has shape d_l x d_{l-1}
  Pooling pooling = Pooling::kMean;
  Eigen::MatrixXd readout_weight;  // C x d_L
  Eigen::VectorXd readout_bias;    // C

  int input_dim() const;
  int output_dim() const;  // d_L
  int class_count() const { return static_cast<int>(readout_weight.rows()); }
};

/// Node embeddings after all message-passing layers (n x d_L).
Eigen::MatrixXd toy_embeddings(const ToyMpModel& model, const Graph& g);

/// Full forward pass: message passing, pooling, linear readout, softmax.
Eigen::VectorXd toy_forward(const ToyMpModel& model, const Graph& g);

/// Forward pass that reads out a single node instead of pooling; used for
/// node-classification tasks converted to ego-graph classification.
Eigen::VectorXd toy_forward_node(const ToyMpModel& model, const Graph& g,
                                 int node);

class ToyModelScorer : public GraphScorer {
 public:
  explicit ToyModelScorer(ToyMpModel model) : model_(std::move(model)) {}

  Eigen::VectorXd forward(const Graph& g) const override {
    return toy_forward(model_, g);
  }
  int class_count() const override { return model_.class_count(); }
  const ToyMpModel& model() const { return model_; }

 private:
  ToyMpModel model_;
};

/// Mean scorer output over a dataset of graphs.
Eigen::VectorXd baseline_expectation(const GraphScorer& f,
                                     const std::vector<Graph>& dataset);

/// Game induced by a scorer on a graph: v(S) is the predicted-class
/// probability of the induced subgraph, shifted by the baseline expectation.
/// The predicted class is the argmax of f on the whole graph, ties broken by
/// the smallest class index. Disconnected coalitions are scored as one
/// (possibly disconnected) subgraph.
class GstarxGame : public CharacteristicFunction {
 public:
  GstarxGame(const GraphScorer& f, Graph g, Eigen::VectorXd baseline);

  int predicted_class() const { return c_star_; }
  const Graph& graph() const { return graph_; }

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  const GraphScorer& scorer_;
  Graph graph_;
  Eigen::VectorXd baseline_;
  int c_star_;
};

/// Index of the largest entry, ties resolved to the smallest index.
int argmax_class(const Eigen::VectorXd& probs);

}  // namespace gstarx
