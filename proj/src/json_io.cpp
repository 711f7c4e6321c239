#include "oudw/json_io.hpp"

namespace oudw {

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

nlohmann::json moment_json(const MomentSummary& m) {
  return {{"n", m.n},
          {"mean", m.mean},
          {"variance", m.variance},
          {"skewness", m.skewness},
          {"excess_kurtosis", m.excess_kurtosis}};
}

nlohmann::json ks_json(const KsResult& k) {
  return {{"distance", k.distance}, {"p_value", k.p_value}};
}

}  // namespace

nlohmann::json to_json(const EstimationResult& r) {
  const SufficientStats& st = r.stats;
  return {{"spec_version", kSpecVersion},
          {"T", st.horizon},
          {"theta_hat", r.theta_hat},
          {"rho_hat", r.rho_hat},
          {"dw", r.dw},
          {"stats",
           {{"s_t", st.s_t},
            {"sigma_t", st.sigma_t},
            {"pi_t", st.pi_t},
            {"x_t", st.x_t},
            {"v_hat_t", st.v_hat_t},
            {"l_hat_t", st.l_hat_t},
            {"gram",
             {{st.gram(0, 0), st.gram(0, 1)}, {st.gram(1, 0), st.gram(1, 1)}}},
            {"rhs", {st.rhs(0), st.rhs(1)}}}}};
}

nlohmann::json to_json(const TestOutcome& t) {
  return {{"spec_version", kSpecVersion},
          {"T", t.estimates.stats.horizon},
          {"theta_hat", t.estimates.theta_hat},
          {"rho_hat", t.estimates.rho_hat},
          {"dw", t.estimates.dw},
          {"z_stat", t.z_stat},
          {"alpha", t.alpha},
          {"z_alpha", t.z_alpha},
          {"reject", t.reject}};
}

nlohmann::json to_json(const ExperimentSummary& s) {
  nlohmann::json j{
      {"spec_version", kSpecVersion},
      {"config",
       {{"theta", s.spec.params.theta},
        {"rho", s.spec.params.rho},
        {"horizon", s.spec.horizon},
        {"step", s.spec.step},
        {"replications", s.spec.replications},
        {"seed", s.spec.seed},
        {"alpha", opt(s.spec.alpha)},
        {"z_alpha", opt(s.spec.z_alpha)},
        {"threads", s.spec.threads}}},
      {"completed", s.completed},
      {"degenerate", s.degenerate},
      {"targets",
       {{"theta_star", s.targets.theta_star},
        {"rho_star", s.targets.rho_star},
        {"d_star", s.targets.d_star}}},
      {"mean_theta_hat", s.mean_theta_hat},
      {"mean_rho_hat", s.mean_rho_hat},
      {"mean_dw", s.mean_dw},
      {"mean_l_hat_rate", s.mean_l_hat_rate},
      {"mean_v_energy_rate", s.mean_v_energy_rate},
      {"rejection_rate", opt(s.rejection_rate)},
      {"scaled_cov", opt(s.scaled_cov)}};
  j["theta_scaled"] = s.theta_scaled ? moment_json(*s.theta_scaled)
                                     : nlohmann::json(nullptr);
  j["rho_scaled"] =
      s.rho_scaled ? moment_json(*s.rho_scaled) : nlohmann::json(nullptr);
  j["theta_ks"] = s.theta_ks ? ks_json(*s.theta_ks) : nlohmann::json(nullptr);
  j["rho_ks"] = s.rho_ks ? ks_json(*s.rho_ks) : nlohmann::json(nullptr);
  return j;
}

}  // namespace oudw
