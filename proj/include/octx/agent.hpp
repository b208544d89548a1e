#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octx/classifier.hpp"
#include "octx/rng.hpp"

namespace octx {

enum class Stream : std::uint8_t { kPL = 0, kNL = 1 };
std::string to_string(Stream s);

/// Retain/remove policy: sigmoid scorer over the instance state, which is
/// the 22-feature vector plus the current working-label bit.
struct RemovalPolicy {
  Vector weights = Vector::Zero(kFeatureCount + 1);
  double bias = -2.0;  // initial removal probability around 0.12

  double remove_probability(const FeatureVector& f, GroundTruth working) const;
};

/// Policy state rows for a batch of instances under one working label.
Matrix policy_states(std::span<const PatchRecord> patches, std::span<const std::int64_t> ids,
                     GroundTruth working);

/// Reward-weighted cross-entropy over taken/inverted actions (mean form) and
/// its analytic gradient; free functions so the finite-difference check can
/// probe exactly what update_policy ascends.
double policy_objective(const RemovalPolicy& policy, const Matrix& states,
                        std::span<const std::uint8_t> targets);
void policy_objective_grad(const RemovalPolicy& policy, const Matrix& states,
                           std::span<const std::uint8_t> targets, Vector& grad_weights,
                           double& grad_bias);

struct AgentConfig {
  int imbalance = 10;          ///< majority:minority cap per stream
  double alpha = 10.0;         ///< reward scale
  double policy_lr = 2.0;
  double val_ratio = 0.3;      ///< within-stream 7:3 split
  int classifier_epochs = 80;
  double classifier_lr = 1.0;
  int epochs = 30;
  int smoothing_window = 5;    ///< F1 window for the reward
  std::uint64_t seed = 0;
};

struct AgentState {
  // originals are immutable once initialized; each epoch re-derives the
  // working sets from them
  std::vector<std::int64_t> p_train_ori, p_val_ori, n_train_ori, n_val_ori;
  std::vector<std::int64_t> p_train, n_train;  // working sets of the current epoch
  RemovalPolicy pl_policy, nl_policy;
  std::vector<double> f1_history_pl, f1_history_nl;
  double alpha = 10.0;
  std::vector<std::string> warnings;
};

struct Reward {
  double value = 0;
  int epoch = 0;
  Stream stream = Stream::kPL;
};

/// Build the PL/NL sets from the FDT-GS batches: the minority class is taken
/// whole, the majority subsampled to `imbalance` times its size (clamped
/// with a warning when short), then split 7:3 into train/validation.
AgentState init_sets(std::span<const std::int64_t> rp_ids, std::span<const std::int64_t> ns_ids,
                     std::span<const PatchRecord> patches, const AgentConfig& config);

struct RemovalSample {
  std::vector<std::int64_t> candidates;  // the stream's original train ids, in order
  std::vector<std::uint8_t> actions;     // 1 = removed
  std::vector<std::int64_t> removed;     // Psi_i
};

/// Independent Bernoulli removal per candidate with the policy probability.
RemovalSample sample_removals(const AgentState& state, std::span<const PatchRecord> patches,
                              Stream stream, std::uint64_t seed);

/// Move `removal` out of the stream's working train set into the opposite
/// set (flipped working label). Throws when an id is not present.
void apply_removals(AgentState& state, Stream stream, std::span<const std::int64_t> removal);

/// R_i = alpha * (mean of the last-w F1 values ending at i, minus the same
/// window ending at i-1); both windows share the truncated length min(w, i).
Reward compute_reward(std::span<const double> f1_history, double alpha, int epoch,
                      Stream stream = Stream::kPL, int window = 5);

/// One ascent step on the reward-weighted cross-entropy; taken actions are
/// the targets when reward > 0, inverted when reward < 0, no-op at 0.
void update_policy(RemovalPolicy& policy, const Matrix& states,
                   std::span<const std::uint8_t> actions, double reward, double lr);

struct AgentTraceRow {
  int epoch = 0;
  Stream stream = Stream::kPL;
  std::int64_t removed = 0;
  double f1 = 0;
  double reward = 0;
};

struct AgentResult {
  AgentState state;
  std::vector<AgentTraceRow> trace;
  std::vector<std::int64_t> cleaned_p_train, cleaned_n_train;
  std::vector<std::int64_t> cleaned_p_val, cleaned_n_val;
  LinearSoftmaxModel final_model{0};
};

/// Full loop: sample removals per stream (two parallel workers joined at the
/// epoch barrier), exchange, retrain, score validation F1 per stream, reward,
/// policy update. Deterministic in (dataset, config, seed).
AgentResult run_agent(AgentState state, std::span<const PatchRecord> patches,
                      const AgentConfig& config);

}  // namespace octx
