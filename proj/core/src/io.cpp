#include "subguard/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "subguard/error.hpp"

namespace subguard {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string json_vec(const Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_real(v(i));
  }
  return out + "]";
}

std::string json_ints(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string json_opt_vec(const std::optional<Vec>& v) { return v ? json_vec(*v) : "null"; }

std::optional<Vec> opt_direction_to_world(const std::optional<Vec>& v,
                                          const CanonicalTransform& t) {
  if (!v) return std::nullopt;
  return t.direction_to_world(*v);
}

// Small builder for a flat JSON object with members in insertion order.
class Obj {
 public:
  Obj& raw(std::string_view key, const std::string& value) {
    body_ += body_.empty() ? "" : ",";
    body_ += quote(key) + ":" + value;
    return *this;
  }
  Obj& str(std::string_view key, std::string_view value) { return raw(key, quote(value)); }
  Obj& real(std::string_view key, double value) { return raw(key, json_real(value)); }
  std::string done() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

Vec read_vector(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::ParseError, std::string(what) + " must contain numbers");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::optional<double> read_optional_real(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number()) throw Error(ErrorCode::ParseError, std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::string_view event_name(EventKind kind) {
  switch (kind) {
    case EventKind::Captured: return "captured";
    case EventKind::Arrived: return "arrived";
    case EventKind::Timeout: return "timeout";
  }
  return "timeout";
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const Tolerances& tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario must be a JSON object");
  for (const char* key : {"defenders", "attacker"}) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key ") + key);
  }

  Scenario s;
  s.attacker = read_vector(j["attacker"], "attacker");
  const auto& defenders = j["defenders"];
  if (!defenders.is_array() || defenders.size() != 2) {
    throw Error(ErrorCode::ParseError, "defenders must list exactly two positions");
  }
  s.defender1 = read_vector(defenders[0], "defenders[0]");
  s.defender2 = read_vector(defenders[1], "defenders[1]");

  if (j.contains("hyperplane")) {
    const auto& h = j["hyperplane"];
    if (!h.is_object() || !h.contains("K")) {
      throw Error(ErrorCode::ParseError, "hyperplane must be an object with K and b");
    }
    s.hyperplane.normal = read_vector(h["K"], "hyperplane.K");
    s.hyperplane.offset = read_optional_real(h, "b").value_or(0.0);
  } else {
    s.hyperplane = Hyperplane::canonical(s.attacker.size());
  }

  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw Error(ErrorCode::ParseError, "n must be an integer");
    const auto n = j["n"].get<long long>();
    if (n != s.attacker.size() || n != s.defender1.size() || n != s.defender2.size() ||
        n != s.hyperplane.normal.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "n = " + std::to_string(n) + " does not match the vector lengths");
    }
  }

  s.defender_speed_value = read_optional_real(j, "v_D");
  s.attacker_speed_value = read_optional_real(j, "v_A");
  if (s.defender_speed_value.has_value() != s.attacker_speed_value.has_value()) {
    throw Error(ErrorCode::ParseError, "v_D and v_A must be given together");
  }
  if (auto alpha = read_optional_real(j, "alpha")) {
    s.alpha = *alpha;
  } else if (s.defender_speed_value) {
    if (*s.defender_speed_value <= 0.0) {
      throw Error(ErrorCode::Assumption3Violated, "Assumption 3 violated: v_D must be positive");
    }
    s.alpha = *s.attacker_speed_value / *s.defender_speed_value;
  } else {
    throw Error(ErrorCode::ParseError, "scenario needs alpha or both speeds");
  }

  validate(s, tol);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), tol);
}

std::string scenario_to_json(const Scenario& s) {
  Obj o;
  o.raw("n", std::to_string(s.dim())).real("alpha", s.alpha);
  if (s.defender_speed_value) o.real("v_D", *s.defender_speed_value);
  if (s.attacker_speed_value) o.real("v_A", *s.attacker_speed_value);
  o.raw("hyperplane",
        Obj().raw("K", json_vec(s.hyperplane.normal)).real("b", s.hyperplane.offset).done());
  o.raw("defenders", "[" + json_vec(s.defender1) + "," + json_vec(s.defender2) + "]");
  o.raw("attacker", json_vec(s.attacker));
  return o.done();
}

std::string kind_to_json(const KindOutcome& k) {
  Obj o;
  o.str("outcome", to_string(k.verdict))
      .str("piece", to_string(k.piece))
      .real("form_value", k.form_value)
      .real("normalized_form", k.normalized_form);
  if (k.active.two_active()) {
    o.raw("active", "[1,2]");
  } else {
    o.raw("active", "[" + std::to_string(k.active.index) + "]");
  }
  o.raw("deciding_defender", std::to_string(k.deciding_defender));
  return o.done();
}

std::string solution_to_json(const DegreeSolution& sol, const CanonicalTransform& t) {
  auto headings = [](const std::optional<Vec>& d1, const std::optional<Vec>& d2,
                     const Vec& a) {
    return Obj().raw("d1", json_opt_vec(d1)).raw("d2", json_opt_vec(d2)).raw("a", json_vec(a)).done();
  };
  Obj world;
  world.raw("otp", json_vec(t.to_world(sol.otp)))
      .raw("headings", headings(opt_direction_to_world(sol.defender1_heading, t),
                                opt_direction_to_world(sol.defender2_heading, t),
                                t.direction_to_world(sol.attacker_heading)));
  return Obj()
      .str("case", to_string(sol.kind))
      .raw("effective", json_ints(sol.effective))
      .raw("otp", json_vec(sol.otp))
      .real("value", sol.value)
      .raw("headings", headings(sol.defender1_heading, sol.defender2_heading,
                                sol.attacker_heading))
      .raw("world", world.done())
      .done();
}

std::string barrier_otp_to_json(const BarrierOtp& otp, const CanonicalTransform& t) {
  return Obj()
      .str("case", "on_barrier")
      .str("piece", to_string(otp.piece))
      .raw("active", json_ints(otp.active))
      .raw("otp", json_vec(otp.point))
      .real("value", 0.0)
      .real("arrival_residual", otp.arrival_residual)
      .real("stationarity_residual", otp.stationarity_residual)
      .raw("world", Obj().raw("otp", json_vec(t.to_world(otp.point))).done())
      .done();
}

std::string barrier_to_csv(const std::vector<BarrierPoint>& points, Eigen::Index n) {
  std::string out;
  for (Eigen::Index i = 1; i <= n; ++i) out += "z" + std::to_string(i) + ",";
  out += "piece\n";
  for (const BarrierPoint& p : points) {
    for (Eigen::Index i = 0; i < p.point.size(); ++i) out += format_real(p.point(i)) + ",";
    out += std::string(to_string(p.piece)) + "\n";
  }
  return out;
}

std::string barrier_to_json(const std::vector<BarrierPoint>& points) {
  std::string out = "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ",";
    out += Obj().raw("points", json_vec(points[i].point)).str("piece", to_string(points[i].piece)).done();
  }
  return out + "]";
}

std::string trajectory_to_csv(const Trajectory& traj, Eigen::Index n) {
  std::string out = "t";
  for (const char* who : {"xD1", "xD2", "xA"}) {
    for (Eigen::Index i = 1; i <= n; ++i) out += std::string(",") + who + "_" + std::to_string(i);
  }
  out += ",event\n";
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const Sample& s = traj.samples[k];
    out += format_real(s.t);
    for (const Vec& x : s.position) {
      for (Eigen::Index i = 0; i < x.size(); ++i) out += "," + format_real(x(i));
    }
    out += ",";
    if (k + 1 == traj.samples.size()) out += event_name(traj.outcome.kind);
    out += "\n";
  }
  return out;
}

std::string trajectory_to_json(const Trajectory& traj) {
  std::string samples = "[";
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const Sample& s = traj.samples[k];
    if (k) samples += ",";
    samples += Obj()
                   .real("t", s.t)
                   .raw("xD1", json_vec(s.position[0]))
                   .raw("xD2", json_vec(s.position[1]))
                   .raw("xA", json_vec(s.position[2]))
                   .str("event", k + 1 == traj.samples.size() ? event_name(traj.outcome.kind) : "")
                   .done();
  }
  samples += "]";
  const Outcome& o = traj.outcome;
  Obj outcome;
  outcome.str("event", event_name(o.kind)).real("time", o.time).raw("point", json_vec(o.point));
  if (o.kind == EventKind::Captured) outcome.raw("captured_by", std::to_string(o.captured_by));
  outcome.raw("arrival_coincident", o.arrival_coincident ? "true" : "false");
  return Obj().real("dt", traj.dt).raw("samples", samples).raw("outcome", outcome.done()).done();
}

std::string error_to_json(std::string_view code, std::string_view message) {
  return Obj().str("error", code).str("message", message).done();
}

}  // namespace subguard
