#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kcbs/fock.hpp"
#include "kcbs/hidden_variable.hpp"
#include "kcbs/kcbs_eval.hpp"
#include "kcbs/optics.hpp"
#include "kcbs/sampler.hpp"

namespace kcbs {

// JSON schemas:
//   SinglePhotonState      {"amplitudes": [[re, im], ...]}
//   UnnormalizedCoherent   {"displacements": [[re, im], ...], "log_weight": x}
//   PhotonNumberMixture    {"populations": [p0, p1, ...]}
//   TransferMatrix         [[[re, im], ...], ...]   (rows of [re, im] pairs)
//   JointProbTable         named fields; p_mp/p_mm null without the split
// Deserialized values go through the ordinary constructors, so invariants
// (norms, unitarity, normalization) are re-checked on load.

nlohmann::json to_json(const SinglePhotonState& state);
SinglePhotonState single_photon_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UnnormalizedCoherent& state);
UnnormalizedCoherent coherent_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PhotonNumberMixture& mixture);
PhotonNumberMixture mixture_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TransferMatrix& u);
TransferMatrix transfer_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JointProbTable& table);
nlohmann::json to_json(const KcbsResult& result);
nlohmann::json to_json(const BenchSettings& settings);
nlohmann::json to_json(const ContextEstimate& estimate);

// CSV emitters. Every table starts with a header row; numbers are written
// with 17 significant digits so identical inputs produce identical bytes.

/// `j, p_mm, p_mp, p_pm, p_pp`; undefined split entries emit "nan".
std::string csv_joint_tables(
    const std::array<JointProbTable, kNumSettings>& tables);

/// `S, kappa, violates`
std::string csv_kcbs_summary(const KcbsResult& result);

/// `n, s_fock` for n = 0..max_n.
std::string csv_fock_table(int max_n = kDefaultTruncation);

/// `alpha_sq, s_coherent` over an inclusive linear grid.
std::string csv_coherent_sweep(double alpha_sq_max, int points);

/// `index, v1..v5, kappa, s` over all 32 assignments.
std::string csv_assignments();

/// `context, C1..C4, C1_sem..C4_sem, P1..P4, P1_sem..P4_sem`
std::string csv_counts_table(
    const std::array<ContextEstimate, kNumSettings>& contexts);

/// `loss_rate, s_ideal, s_sampled, sigma`
std::string csv_loss_sweep(const std::vector<LossSweepRow>& rows);

/// Fixed-format double used by all CSV emitters.
std::string format_double(double x);

}  // namespace kcbs
