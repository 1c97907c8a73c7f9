#include "kcbs/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "kcbs/photon_stats.hpp"

namespace kcbs {

namespace {

nlohmann::json complex_vector_to_json(const Eigen::RowVectorXcd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back({v(i).real(), v(i).imag()});
  }
  return out;
}

Eigen::RowVectorXcd complex_vector_from_json(const nlohmann::json& j) {
  Eigen::RowVectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = std::complex<double>(
        j[i].at(0).get<double>(), j[i].at(1).get<double>());
  }
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json to_json(const SinglePhotonState& state) {
  return {{"amplitudes", complex_vector_to_json(state.amplitudes())}};
}

SinglePhotonState single_photon_from_json(const nlohmann::json& j) {
  return SinglePhotonState(complex_vector_from_json(j.at("amplitudes")));
}

nlohmann::json to_json(const UnnormalizedCoherent& state) {
  return {{"displacements", complex_vector_to_json(state.displacements())},
          {"log_weight", state.log_weight()}};
}

UnnormalizedCoherent coherent_from_json(const nlohmann::json& j) {
  return UnnormalizedCoherent(
      complex_vector_from_json(j.at("displacements")),
      j.at("log_weight").get<double>());
}

nlohmann::json to_json(const PhotonNumberMixture& mixture) {
  return {{"populations", mixture.populations()}};
}

PhotonNumberMixture mixture_from_json(const nlohmann::json& j) {
  return PhotonNumberMixture(
      j.at("populations").get<std::vector<double>>());
}

nlohmann::json to_json(const TransferMatrix& u) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < u.mode_count(); ++r) {
    rows.push_back(complex_vector_to_json(u.entries().row(r)));
  }
  return rows;
}

TransferMatrix transfer_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.size();
  Eigen::MatrixXcd m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != rows) {
      throw std::invalid_argument("transfer_matrix_from_json: ragged rows");
    }
    m.row(static_cast<Eigen::Index>(r)) = complex_vector_from_json(j[r]);
  }
  return TransferMatrix(std::move(m));
}

nlohmann::json to_json(const JointProbTable& table) {
  nlohmann::json j{{"context", table.context},
                   {"p_pp", table.p_pp},
                   {"p_pm", table.p_pm},
                   {"marginal_first", table.marginal_first},
                   {"marginal_second", table.marginal_second},
                   {"p_minus_total", table.p_minus_total},
                   {"click_split_defined", table.click_split_defined}};
  if (table.click_split_defined) {
    j["p_mp"] = table.p_mp;
    j["p_mm"] = table.p_mm;
  } else {
    j["p_mp"] = nullptr;
    j["p_mm"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const KcbsResult& result) {
  nlohmann::json contexts = nlohmann::json::array();
  for (const auto& t : result.per_context) {
    contexts.push_back(to_json(t));
  }
  return {{"s", result.s_value},
          {"kappa", result.kappa},
          {"violates_classical", result.violates_classical},
          {"kappa_independent", result.kappa_independent},
          {"per_context", contexts}};
}

nlohmann::json to_json(const BenchSettings& settings) {
  nlohmann::json radians = nlohmann::json::array();
  nlohmann::json degrees = nlohmann::json::array();
  for (double a : settings.angle_diffs) {
    radians.push_back(a);
    degrees.push_back(a * 180.0 / M_PI);
  }
  return {{"context", settings.context},
          {"angle_diffs_radians", radians},
          {"angle_diffs_degrees", degrees},
          {"verified", settings.verified}};
}

nlohmann::json to_json(const ContextEstimate& estimate) {
  return {{"context", estimate.context},
          {"shots", estimate.shots},
          {"repetitions", estimate.repetitions},
          {"mean_counts", estimate.mean_counts},
          {"sem_counts", estimate.sem_counts},
          {"mean_probs", estimate.mean_probs},
          {"sem_probs", estimate.sem_probs}};
}

std::string csv_joint_tables(
    const std::array<JointProbTable, kNumSettings>& tables) {
  std::ostringstream out;
  out << "j,p_mm,p_mp,p_pm,p_pp\n";
  for (const auto& t : tables) {
    out << t.context << ',' << format_double(t.p_mm) << ','
        << format_double(t.p_mp) << ',' << format_double(t.p_pm) << ','
        << format_double(t.p_pp) << '\n';
  }
  return out.str();
}

std::string csv_kcbs_summary(const KcbsResult& result) {
  std::ostringstream out;
  out << "S,kappa,violates\n";
  out << format_double(result.s_value) << ',' << format_double(result.kappa)
      << ',' << (result.violates_classical ? 1 : 0) << '\n';
  return out.str();
}

std::string csv_fock_table(int max_n) {
  std::ostringstream out;
  out << "n,s_fock\n";
  for (int n = 0; n <= max_n; ++n) {
    out << n << ',' << format_double(s_fock(n)) << '\n';
  }
  return out.str();
}

std::string csv_coherent_sweep(double alpha_sq_max, int points) {
  if (points < 2 || alpha_sq_max <= 0.0) {
    throw std::invalid_argument("csv_coherent_sweep: bad grid");
  }
  std::ostringstream out;
  out << "alpha_sq,s_coherent\n";
  for (int i = 0; i < points; ++i) {
    const double x = alpha_sq_max * i / (points - 1);
    out << format_double(x) << ',' << format_double(s_coherent(x)) << '\n';
  }
  return out.str();
}

std::string csv_assignments() {
  std::ostringstream out;
  out << "index,v1,v2,v3,v4,v5,kappa,s\n";
  const auto records = assignment_table();
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << i;
    for (int v : records[i].values) {
      out << ',' << v;
    }
    out << ',' << records[i].kappa << ',' << records[i].s << '\n';
  }
  return out.str();
}

std::string csv_counts_table(
    const std::array<ContextEstimate, kNumSettings>& contexts) {
  std::ostringstream out;
  out << "context,C1,C2,C3,C4,C1_sem,C2_sem,C3_sem,C4_sem,"
         "P1,P2,P3,P4,P1_sem,P2_sem,P3_sem,P4_sem\n";
  for (const auto& c : contexts) {
    out << c.context;
    for (double x : c.mean_counts) out << ',' << format_double(x);
    for (double x : c.sem_counts) out << ',' << format_double(x);
    for (double x : c.mean_probs) out << ',' << format_double(x);
    for (double x : c.sem_probs) out << ',' << format_double(x);
    out << '\n';
  }
  return out.str();
}

std::string csv_loss_sweep(const std::vector<LossSweepRow>& rows) {
  std::ostringstream out;
  out << "loss_rate,s_ideal,s_sampled,sigma\n";
  for (const auto& r : rows) {
    out << format_double(r.loss_rate) << ',' << format_double(r.s_ideal)
        << ',' << format_double(r.s_sampled) << ',' << format_double(r.sigma)
        << '\n';
  }
  return out.str();
}

}  // namespace kcbs
