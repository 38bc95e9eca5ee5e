#include "gstarx/payoff.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gstarx/errors.hpp"

namespace gstarx {

CharacteristicFunction::CharacteristicFunction(int players)
    : players_(players) {
  if (players < 1) throw InvalidInputError("game needs at least one player");
  if (players > kMaxNodes)
    throw InvalidInputError("player count exceeds the bitset limit");
}

double CharacteristicFunction::value(const Coalition& s) const {
  if (s.empty()) return 0.0;
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
  }
  double v = evaluate(s);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  // emplace keeps the first value if another thread raced us here; evaluate
  // is deterministic so both are identical anyway.
  return memo_.emplace(s, v).first->second;
}

UnanimityGame::UnanimityGame(int players, Coalition t)
    : CharacteristicFunction(players), t_(std::move(t)) {
  if (t_.empty())
    throw EmptyCoalitionError("unanimity game needs a nonempty carrier");
  if (!t_.is_subset_of(Coalition::full(players)))
    throw NodeOutOfRangeError("carrier outside the player set");
}

TabularGame::TabularGame(int players, Table entries,
                         std::optional<double> default_value)
    : CharacteristicFunction(players),
      entries_(std::move(entries)),
      default_value_(default_value) {
  auto empty_entry = entries_.find(Coalition{});
  if (empty_entry != entries_.end()) {
    if (empty_entry->second != 0.0)
      throw InvalidInputError("payoff table assigns a nonzero value to the "
                              "empty coalition; v(empty) must be 0");
    entries_.erase(empty_entry);
  }
  Coalition all = Coalition::full(players);
  for (const auto& [s, _] : entries_) {
    if (!s.is_subset_of(all))
      throw NodeOutOfRangeError("payoff table key outside the player set");
  }
  if (!default_value_) {
    const std::uint64_t wanted =
        players >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << players) - 1;
    if (players > 62 || entries_.size() != wanted)
      throw IncompleteTableError(
          "payoff table without a default must cover all " +
          std::to_string(wanted) + " nonempty coalitions (got " +
          std::to_string(entries_.size()) + ")");
  }
}

double TabularGame::evaluate(const Coalition& s) const {
  auto it = entries_.find(s);
  if (it != entries_.end()) return it->second;
  return *default_value_;  // completeness was checked at construction
}

int ToyMpModel::input_dim() const {
  return layers.empty() ? static_cast<int>(readout_weight.cols())
                        : static_cast<int>(layers.front().cols());
}

int ToyMpModel::output_dim() const {
  return layers.empty() ? static_cast<int>(readout_weight.cols())
                        : static_cast<int>(layers.back().rows());
}

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd shifted =
      (logits.array() - logits.maxCoeff()).exp().matrix();
  return shifted / shifted.sum();
}

}  // namespace

Eigen::MatrixXd toy_embeddings(const ToyMpModel& model, const Graph& g) {
  if (!g.has_features())
    throw DimensionMismatchError("model forward pass needs node features");
  if (g.feature_dim() != model.input_dim())
    throw DimensionMismatchError(
        "feature width " + std::to_string(g.feature_dim()) +
        " does not match model input width " +
        std::to_string(model.input_dim()));

  const int n = g.node_count();
  Eigen::MatrixXd h = g.features();
  for (const Eigen::MatrixXd& w : model.layers) {
    if (w.cols() != h.cols())
      throw DimensionMismatchError("layer width mismatch inside the model");
    Eigen::MatrixXd aggregated(n, h.cols());
    for (int u = 0; u < n; ++u) {
      Eigen::RowVectorXd acc = h.row(u);
      g.neighbors(u).for_each([&](int v) { acc += h.row(v); });
      aggregated.row(u) = acc;
    }
    h = (aggregated * w.transpose()).cwiseMax(0.0);
  }
  return h;
}

Eigen::VectorXd toy_forward(const ToyMpModel& model, const Graph& g) {
  Eigen::MatrixXd h = toy_embeddings(model, g);
  Eigen::VectorXd pooled;
  if (model.pooling == ToyMpModel::Pooling::kMean) {
    pooled = h.colwise().mean();
  } else {
    pooled = h.colwise().maxCoeff();
  }
  if (model.readout_weight.cols() != pooled.size())
    throw DimensionMismatchError("readout width mismatch");
  return softmax(model.readout_weight * pooled + model.readout_bias);
}

Eigen::VectorXd toy_forward_node(const ToyMpModel& model, const Graph& g,
                                 int node) {
  if (node < 0 || node >= g.node_count())
    throw NodeOutOfRangeError("readout node outside the graph");
  Eigen::MatrixXd h = toy_embeddings(model, g);
  return softmax(model.readout_weight * h.row(node).transpose() +
                 model.readout_bias);
}

Eigen::VectorXd baseline_expectation(const GraphScorer& f,
                                     const std::vector<Graph>& dataset) {
  if (dataset.empty())
    throw EmptyDatasetError("baseline expectation over an empty dataset");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(f.class_count());
  for (const Graph& g : dataset) sum += f.forward(g);
  return sum / static_cast<double>(dataset.size());
}

int argmax_class(const Eigen::VectorXd& probs) {
  int best = 0;
  for (int c = 1; c < probs.size(); ++c)
    if (probs[c] > probs[best]) best = c;
  return best;
}

GstarxGame::GstarxGame(const GraphScorer& f, Graph g, Eigen::VectorXd baseline)
    : CharacteristicFunction(g.node_count()),
      scorer_(f),
      graph_(std::move(g)),
      baseline_(std::move(baseline)) {
  if (baseline_.size() != f.class_count())
    throw DimensionMismatchError("baseline length must match class count");
  c_star_ = argmax_class(scorer_.forward(graph_));
}

double GstarxGame::evaluate(const Coalition& s) const {
  InducedSubgraph sub = induced_subgraph(graph_, s);
  return scorer_.forward(sub.graph)[c_star_] - baseline_[c_star_];
}

}  // namespace gstarx
