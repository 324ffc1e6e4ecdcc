#include "subguard/verify.hpp"

#include <algorithm>
#include <cmath>

#include "subguard/degree.hpp"
#include "subguard/error.hpp"
#include "subguard/io.hpp"
#include "subguard/kind.hpp"

namespace subguard {

namespace {

std::vector<double> as_vector(const Vec& v) { return {v.data(), v.data() + v.size()}; }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

VerificationEntry entry(std::string instance, std::string quantity, std::vector<double> closed,
                        std::vector<double> oracle, double tolerance) {
  VerificationEntry e{std::move(instance), std::move(quantity), std::move(closed),
                      std::move(oracle), 0.0, false};
  e.abs_diff = max_abs_diff(e.closed_form, e.oracle);
  e.agree = e.closed_form.size() == e.oracle.size() && e.abs_diff <= tolerance;
  return e;
}

double verdict_code(KindVerdict v) {
  switch (v) {
    case KindVerdict::DefendersWin: return 1.0;
    case KindVerdict::AttackerWins: return -1.0;
    case KindVerdict::OnBarrier: return 0.0;
  }
  return 0.0;
}

double verdict_code(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::DefendersWin: return 1.0;
    case OracleVerdict::AttackerWins: return -1.0;
    case OracleVerdict::Inconclusive: return 0.0;
  }
  return 0.0;
}

// Maximizer over the hyperplane of the smaller separation at arrival.
Vec barrier_target_oracle(const Scenario& s, const std::vector<int>& active,
                          const OracleOptions& options) {
  if (active.size() == 1) {
    return oracle_otp_1v1(s.attacker, s.defender(active.front()), s.alpha, options);
  }
  const Vec a_lat = lateral(s.attacker);
  const Objective f = [&](const Vec& q) {
    const Vec p = compose(q, 0.0);
    return std::min(f_value(p, s.attacker, s.defender1, s.alpha),
                    f_value(p, s.attacker, s.defender2, s.alpha));
  };
  const double reach = std::min((s.attacker - s.defender1).norm(), (s.attacker - s.defender2).norm());
  GridSpec spec;
  spec.center = a_lat;
  spec.half_width = (s.alpha * reach + height(s.attacker)) / (1.0 - s.alpha) + 1.0;
  spec.points_per_axis = options.points_per_axis > 0
                             ? options.points_per_axis
                             : points_for_budget(a_lat.size(), options.search.budget);
  spec.refinement_rounds = options.refinement_rounds;
  return compose(grid_maximize(f, spec, options.search).argmax, 0.0);
}

}  // namespace

std::vector<VerificationEntry> verify_scenario(const Scenario& input,
                                               const OracleOptions& options) {
  validate(input);
  const Scenario s = input.is_canonical() ? input : canonicalize(input).scenario;
  const std::string instance = "n=" + std::to_string(s.dim());
  std::vector<VerificationEntry> out;

  const KindOutcome kind = evaluate_kind(s);
  const OracleKindResult ok = oracle_kind(s, options);
  out.push_back(entry(instance, "kind", {verdict_code(kind.verdict)},
                      {verdict_code(ok.verdict)}, 0.0));

  if (kind.verdict == KindVerdict::DefendersWin) {
    const DegreeSolution sol = solve_dws(s);
    std::vector<Vec> both = {s.defender1, s.defender2};
    const AttackerResponse best = oracle_attacker_response(s.attacker, both, s.alpha, options);
    out.push_back(entry(instance, "value", {sol.value}, {best.capture_height}, 1e-6));
    if (sol.kind != EffectiveCase::OneEffective) {
      const OracleDwsResult dws = oracle_otp_dws(s, options);
      out.push_back(entry(instance, "otp", as_vector(sol.otp), as_vector(dws.point), 1e-6));
    }
  } else if (kind.verdict == KindVerdict::OnBarrier) {
    const BarrierOtp otp = otp_on_barrier(s);
    const Vec oracle = barrier_target_oracle(s, otp.active, options);
    out.push_back(entry(instance, "barrier_otp", as_vector(otp.point), as_vector(oracle), 1e-4));
  }
  return out;
}

std::string verification_to_json(const std::vector<VerificationEntry>& entries) {
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::isfinite(v[i]) ? format_real(v[i]) : "null";
    }
    return s + "]";
  };
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const VerificationEntry& e = entries[i];
    if (i) out += ",";
    out += "{\"instance\":\"" + e.instance + "\",\"quantity\":\"" + e.quantity +
           "\",\"closed_form\":" + list(e.closed_form) + ",\"oracle\":" + list(e.oracle) +
           ",\"abs_diff\":" + format_real(e.abs_diff) +
           ",\"agree\":" + (e.agree ? "true" : "false") + "}";
  }
  return out + "]";
}

}  // namespace subguard
