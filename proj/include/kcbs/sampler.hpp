#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kcbs/kcbs_eval.hpp"
#include "kcbs/measurement.hpp"

namespace kcbs {

/// Finite-statistics experiment configuration. A "shot" is one heralded
/// coincidence window; loss_rate is the vacuum population rho_00 of the
/// lossy input.
struct ShotConfig {
  std::uint64_t shots_per_context = 4100;
  int repetitions = 100;
  std::uint64_t seed = 0;
  double loss_rate = 0.0;

  void validate() const;  // throws std::invalid_argument
};

/// SplitMix64 finalizer. Substreams are derived as
///   substream_seed = splitmix64(master ^ splitmix64(stream_key))
/// with stream_key = (stream << 32) | index, which makes every
/// (context, repetition) draw independent of scheduling order and
/// bit-reproducible across platforms (the engine below never goes through
/// std::distribution objects).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                             std::uint64_t index);

/// Detector probabilities for one context, conditioned on a photon
/// surviving to the circuit (fair sampling):
///   q1 = p(v_j = -1)              first-stage click
///   q2 = p(+, -)                  second-stage click
///   q3, q4                        split of p(+, +) over the two surviving
///                                 output modes of the final network
/// The conditional values are loss-independent; loss_rate = 1 leaves no
/// coincidences and throws std::domain_error.
struct DetectorProbabilities {
  std::array<double, 4> q{};
};
DetectorProbabilities detector_probabilities(const MeasurementContext& context,
                                             const KcbsMeasurementFamily& family,
                                             double loss_rate);

/// Counts of one 1 s window.
struct ContextCounts {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t total() const;
  std::array<double, 4> probabilities() const;
};

/// Mean counts/probabilities over the repetitions of one context, with
/// standard deviations of the mean.
struct ContextEstimate {
  int context = 1;
  std::uint64_t shots = 0;
  int repetitions = 0;
  std::array<double, 4> mean_counts{};
  std::array<double, 4> sem_counts{};
  std::array<double, 4> mean_probs{};
  std::array<double, 4> sem_probs{};
};

/// Draws `repetitions` multinomial windows of `shots_per_context` trials
/// over the conditional detector probabilities.
ContextEstimate sample_context(const ShotConfig& config,
                               const MeasurementContext& context,
                               const KcbsMeasurementFamily& family);

struct SEstimate {
  double s_hat = 0.0;
  double sigma = 0.0;
};

/// S from the second-stage click column: s_hat = sum_j mean P2_j, sigma by
/// quadrature over the per-context standard errors.
SEstimate estimate_s(const std::array<ContextEstimate, kNumSettings>& counts);

/// Convenience: sample all five contexts and estimate S.
struct SampledExperiment {
  std::array<ContextEstimate, kNumSettings> contexts{};
  SEstimate s;
};
SampledExperiment run_experiment(const ShotConfig& config,
                                 const KcbsMeasurementFamily& family);

struct LossSweepRow {
  double loss_rate = 0.0;
  double s_ideal = 0.0;
  double s_sampled = 0.0;
  double sigma = 0.0;
};

/// For each loss rate: the ideal value (1 - loss) sqrt(5) and an estimate
/// from unconditioned sampling, where lost photons land in a fifth monitor
/// category and the probabilities keep the full-trial denominator.
std::vector<LossSweepRow> loss_sweep(const std::vector<double>& grid,
                                     const ShotConfig& config,
                                     const KcbsMeasurementFamily& family);

}  // namespace kcbs
