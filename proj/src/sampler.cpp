#include "kcbs/sampler.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace kcbs {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// One window: n categorical draws by cumulative inversion.
template <std::size_t K>
std::array<std::uint64_t, K> multinomial_window(
    std::mt19937_64& eng, const std::array<double, K>& probs,
    std::uint64_t n) {
  std::array<double, K> cumulative{};
  double acc = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    acc += probs[i];
    cumulative[i] = acc;
  }
  cumulative[K - 1] = 1.0;  // guard against rounding in the last bin

  std::array<std::uint64_t, K> counts{};
  for (std::uint64_t t = 0; t < n; ++t) {
    const double u = uniform01(eng);
    std::size_t i = 0;
    while (i + 1 < K && u >= cumulative[i]) ++i;
    ++counts[i];
  }
  return counts;
}

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
};

MeanSem mean_sem(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// Stream ids, combined with the grid index for the sweep so that every
// (grid point, context, repetition) triple has its own substream.
constexpr std::uint64_t kContextStreamBase = 1;

}  // namespace

void ShotConfig::validate() const {
  if (shots_per_context < 1) {
    throw std::invalid_argument("ShotConfig: shots_per_context must be >= 1");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("ShotConfig: repetitions must be >= 1");
  }
  if (loss_rate < 0.0 || loss_rate > 1.0) {
    throw std::invalid_argument("ShotConfig: loss_rate must be in [0, 1]");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                             std::uint64_t index) {
  return splitmix64(master ^ splitmix64((stream << 32) | index));
}

DetectorProbabilities detector_probabilities(
    const MeasurementContext& context, const KcbsMeasurementFamily& family,
    double loss_rate) {
  if (loss_rate < 0.0 || loss_rate > 1.0) {
    throw std::invalid_argument(
        "detector_probabilities: loss_rate must be in [0, 1]");
  }
  if (loss_rate >= 1.0) {
    throw std::domain_error(
        "detector_probabilities: loss_rate 1 leaves no photons to detect");
  }

  const SinglePhotonState input = make_single_photon(1, family.mode_count());
  const PhotonMeasurement first =
      measure_observable(context.first(), family, input);

  DetectorProbabilities probs;
  probs.q[0] = first.p_minus;  // D1: first-stage click

  // Surviving branch, rotated into the second measurement frame. Mode 1
  // feeds the second-stage click detector; the remaining modes feed the
  // no-click outputs.
  const TransferMatrix& u_next = family.unitary(context.second());
  const SinglePhotonState out =
      apply_single_photon(u_next.adjoint(), first.post_plus);
  probs.q[1] = std::norm(out.amplitudes()(0));  // D2: second-stage click
  probs.q[2] = std::norm(out.amplitudes()(1));  // D3: first surviving mode
  probs.q[3] = 0.0;                             // D4: remaining modes
  for (int k = 2; k < family.mode_count(); ++k) {
    probs.q[3] += std::norm(out.amplitudes()(k));
  }
  return probs;
}

std::uint64_t ContextCounts::total() const {
  return counts[0] + counts[1] + counts[2] + counts[3];
}

std::array<double, 4> ContextCounts::probabilities() const {
  const double n = static_cast<double>(total());
  if (n == 0.0) {
    return {0.0, 0.0, 0.0, 0.0};
  }
  return {counts[0] / n, counts[1] / n, counts[2] / n, counts[3] / n};
}

ContextEstimate sample_context(const ShotConfig& config,
                               const MeasurementContext& context,
                               const KcbsMeasurementFamily& family) {
  config.validate();
  const DetectorProbabilities probs =
      detector_probabilities(context, family, config.loss_rate);

  std::array<std::vector<double>, 4> count_series;
  std::array<std::vector<double>, 4> prob_series;
  for (auto& v : count_series) v.reserve(static_cast<std::size_t>(config.repetitions));
  for (auto& v : prob_series) v.reserve(static_cast<std::size_t>(config.repetitions));

  for (int rep = 0; rep < config.repetitions; ++rep) {
    std::mt19937_64 eng(substream_seed(
        config.seed, kContextStreamBase + static_cast<std::uint64_t>(context.first()),
        static_cast<std::uint64_t>(rep)));
    ContextCounts window{
        multinomial_window<4>(eng, probs.q, config.shots_per_context)};
    const auto p = window.probabilities();
    for (std::size_t i = 0; i < 4; ++i) {
      count_series[i].push_back(static_cast<double>(window.counts[i]));
      prob_series[i].push_back(p[i]);
    }
  }

  ContextEstimate est;
  est.context = context.first();
  est.shots = config.shots_per_context;
  est.repetitions = config.repetitions;
  for (std::size_t i = 0; i < 4; ++i) {
    const MeanSem c = mean_sem(count_series[i]);
    const MeanSem p = mean_sem(prob_series[i]);
    est.mean_counts[i] = c.mean;
    est.sem_counts[i] = c.sem;
    est.mean_probs[i] = p.mean;
    est.sem_probs[i] = p.sem;
  }
  return est;
}

SEstimate estimate_s(
    const std::array<ContextEstimate, kNumSettings>& counts) {
  double s = 0.0;
  double var = 0.0;
  for (const auto& est : counts) {
    if (est.repetitions < 1 || est.shots < 1) {
      throw std::invalid_argument("estimate_s: empty context estimate");
    }
    s += est.mean_probs[1];
    var += est.sem_probs[1] * est.sem_probs[1];
  }
  return {s, std::sqrt(var)};
}

SampledExperiment run_experiment(const ShotConfig& config,
                                 const KcbsMeasurementFamily& family) {
  SampledExperiment exp;
  for (int j = 1; j <= kNumSettings; ++j) {
    exp.contexts[static_cast<std::size_t>(j - 1)] =
        sample_context(config, MeasurementContext(j), family);
  }
  exp.s = estimate_s(exp.contexts);
  return exp;
}

std::vector<LossSweepRow> loss_sweep(const std::vector<double>& grid,
                                     const ShotConfig& config,
                                     const KcbsMeasurementFamily& family) {
  config.validate();
  std::vector<LossSweepRow> rows;
  rows.reserve(grid.size());

  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double loss = grid[g];
    if (loss < 0.0 || loss > 1.0) {
      throw std::invalid_argument("loss_sweep: loss_rate must be in [0, 1]");
    }
    const double survival = 1.0 - loss;

    double s_sampled = 0.0;
    double var = 0.0;
    for (int j = 1; j <= kNumSettings; ++j) {
      // Unconditioned five-category window: the photon reaches a detector
      // with probability 1 - loss, otherwise the loss monitor fires.
      std::array<double, 5> q5{};
      if (loss < 1.0) {
        const DetectorProbabilities probs =
            detector_probabilities(MeasurementContext(j), family, loss);
        for (std::size_t i = 0; i < 4; ++i) q5[i] = probs.q[i] * survival;
      }
      q5[4] = loss;

      std::vector<double> p2_series;
      p2_series.reserve(static_cast<std::size_t>(config.repetitions));
      for (int rep = 0; rep < config.repetitions; ++rep) {
        std::mt19937_64 eng(substream_seed(
            config.seed,
            kContextStreamBase +
                static_cast<std::uint64_t>((g + 1) * 64 +
                                           static_cast<std::uint64_t>(j)),
            static_cast<std::uint64_t>(rep)));
        const auto counts =
            multinomial_window<5>(eng, q5, config.shots_per_context);
        p2_series.push_back(static_cast<double>(counts[1]) /
                            static_cast<double>(config.shots_per_context));
      }
      const MeanSem p2 = mean_sem(p2_series);
      s_sampled += p2.mean;
      var += p2.sem * p2.sem;
    }

    rows.push_back({loss, survival * kSqrt5, s_sampled, std::sqrt(var)});
  }
  return rows;
}

}  // namespace kcbs
