#include "rlm/serialize.hpp"

#include <string>

namespace rlm {

namespace {

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json estimate_json(const Estimate& e, const nlohmann::json& params, std::uint64_t seed) {
  nlohmann::json j = {
      {"mean", e.mean},
      {"std_error", e.std_error},
      {"n_samples", e.n_samples},
      {"estimator", std::string(to_string(e.estimator))},
      {"params", params},
      {"seed", seed},
  };
  if (e.effective_sample_size) {
    j["effective_sample_size"] = *e.effective_sample_size;
    j["low_ess"] = e.low_ess;
  }
  if (e.autocorrelation_time) j["autocorrelation_time"] = *e.autocorrelation_time;
  if (e.acceptance_rate) j["acceptance_rate"] = *e.acceptance_rate;
  return j;
}

nlohmann::json to_json(const SparsityVerdict& v) {
  nlohmann::json j = {
      {"holds", v.holds},
      {"certified", v.certifies()},
      {"mode", v.mode == SparsityMode::Exhaustive ? "exhaustive" : "heuristic"},
      {"size_cap", v.size_cap},
      {"eta", v.eta},
      {"eps", v.eps},
      {"work", v.work},
      {"witness", nullptr},
  };
  if (v.witness) {
    j["witness"] = {{"vertices", v.witness->vertices},
                    {"size", v.witness->vertices.size()},
                    {"induced_edges", v.witness->induced_edges}};
  }
  return j;
}

nlohmann::json to_json(const CriterionReport& r) {
  return {
      {"n", r.n},
      {"edge_count", r.edge_count},
      {"theta", r.theta},
      {"u", r.u},
      {"eps", r.eps},
      {"eta", r.eta},
      {"alpha", r.alpha},
      {"c", r.c},
      {"alpha_exceeds_c", r.alpha_exceeds_c},
      {"sparsity_holds", r.sparsity_holds},
      {"sparsity_certified", r.sparsity_certified},
      {"sparsity_size_cap", r.sparsity_size_cap},
      {"threshold_time", optional_json(r.threshold_time)},
      {"mean_degree", r.mean_degree},
      {"mean_degree_exceeds_2c", r.mean_degree_exceeds_2c},
      {"regular_degree", optional_json(r.regular_degree)},
      {"regular_degree_exceeds_2c", r.regular_degree_exceeds_2c},
      {"applicable", r.applicable},
  };
}

nlohmann::json to_json(const BoundInputs& in) {
  return {
      {"n", in.n},
      {"edge_count", in.edge_count},
      {"theta", in.theta},
      {"u", in.u},
      {"eps", in.eps},
      {"eta", in.eta},
      {"m_minus", in.m_minus},
      {"m_plus", in.m_plus},
      {"s", optional_json(in.s)},
      {"t", optional_json(in.t)},
  };
}

}  // namespace rlm
