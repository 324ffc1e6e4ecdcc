#include "subguard/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "subguard/error.hpp"

namespace subguard {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, const Vec& x) {
  const double v = f(x);
  return std::isnan(v) ? kNegInf : v;
}

double grid_size(Eigen::Index dim, int points) {
  return std::pow(static_cast<double>(points), static_cast<double>(dim));
}

// Visits every node of a k^d grid in lexicographic order (last axis fastest).
template <typename Visit>
void for_each_node(const Vec& center, double half_width, int k, Visit&& visit) {
  const Eigen::Index d = center.size();
  std::vector<int> index(static_cast<std::size_t>(d), 0);
  const double step = k > 1 ? 2.0 * half_width / (k - 1) : 0.0;
  const double offset = k > 1 ? half_width : 0.0;
  Vec x(d);
  for (;;) {
    for (Eigen::Index a = 0; a < d; ++a) {
      x(a) = center(a) - offset + step * index[static_cast<std::size_t>(a)];
    }
    visit(x, index);
    Eigen::Index a = d - 1;
    for (; a >= 0; --a) {
      auto& i = index[static_cast<std::size_t>(a)];
      if (++i < k) break;
      i = 0;
    }
    if (a < 0) return;
  }
}

void check_oracle_dim(Eigen::Index n) {
  if (n > kOracleMaxDim) {
    throw Error(ErrorCode::DimensionCap,
                "oracles support n <= " + std::to_string(kOracleMaxDim) +
                    ", got n = " + std::to_string(n));
  }
}

void check_canonical(const Scenario& scenario) {
  validate(scenario);
  if (!scenario.is_canonical()) {
    throw Error(ErrorCode::NotCanonical, "oracles expect a canonical scenario");
  }
  check_oracle_dim(scenario.dim());
}

SearchResult search(const Objective& f, const Vec& center, double half_width,
                    const OracleOptions& options) {
  const Eigen::Index d = center.size();
  GridSpec spec;
  spec.center = center;
  spec.half_width = half_width;
  spec.points_per_axis = options.points_per_axis > 0
                             ? options.points_per_axis
                             : points_for_budget(d, options.search.budget);
  spec.refinement_rounds = options.refinement_rounds;
  return grid_maximize(f, spec, options.search);
}

// Unit vector on S^{k} in R^{k+1} from k hyperspherical angles.
void sphere_point(const Vec& angles, Vec& out) {
  const Eigen::Index k = angles.size();
  double sines = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    out(j) = sines * std::cos(angles(j));
    sines *= std::sin(angles(j));
  }
  out(k) = sines;
}

struct Pawn {
  Vec lat;
  double h2;  // squared height
};

Pawn pawn(const Vec& x) { return {lateral(x), height(x) * height(x)}; }

double dist(const Vec& q, const Pawn& p) {
  return std::sqrt((q - p.lat).squaredNorm() + p.h2);
}

}  // namespace

int points_for_budget(Eigen::Index dim, std::size_t budget, int cap) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "search dimension must be positive");
  int k = cap % 2 == 0 ? cap - 1 : cap;
  while (k >= 3 && grid_size(dim, k) > static_cast<double>(budget)) k -= 2;
  if (k < 3) {
    throw Error(ErrorCode::BudgetExceeded,
                "budget too small for a 3-point grid in " + std::to_string(dim) +
                    " dimensions");
  }
  return k;
}

SearchResult nelder_mead_maximize(const Objective& f, const Vec& start, double step,
                                  int max_iterations) {
  const Eigen::Index d = start.size();
  std::vector<Vec> simplex(static_cast<std::size_t>(d + 1), start);
  std::vector<double> value(simplex.size());
  for (Eigen::Index i = 0; i < d; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += step;
  SearchResult out;
  for (std::size_t i = 0; i < simplex.size(); ++i) value[i] = safe_eval(f, simplex[i]);
  out.evaluations = simplex.size();

  std::vector<std::size_t> order(simplex.size());
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double size = 0.0;
    for (const Vec& v : simplex) size = std::max(size, (v - simplex[best]).norm());
    if (size <= 1e-15 * (1.0 + simplex[best].norm())) break;

    Vec centroid = Vec::Zero(d);
    for (std::size_t i : order) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(d);

    const Vec reflected = centroid + (centroid - simplex[worst]);
    const double fr = safe_eval(f, reflected);
    ++out.evaluations;
    if (fr > value[best]) {
      const Vec expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = safe_eval(f, expanded);
      ++out.evaluations;
      if (fe > fr) {
        simplex[worst] = expanded;
        value[worst] = fe;
      } else {
        simplex[worst] = reflected;
        value[worst] = fr;
      }
      continue;
    }
    if (fr > value[second]) {
      simplex[worst] = reflected;
      value[worst] = fr;
      continue;
    }
    const bool outside = fr > value[worst];
    const Vec contracted = outside ? Vec(centroid + 0.5 * (reflected - centroid))
                                   : Vec(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = safe_eval(f, contracted);
    ++out.evaluations;
    if (fc > (outside ? fr : value[worst])) {
      simplex[worst] = contracted;
      value[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      value[i] = safe_eval(f, simplex[i]);
      ++out.evaluations;
    }
  }
  const auto best = static_cast<std::size_t>(
      std::max_element(value.begin(), value.end()) - value.begin());
  out.argmax = simplex[best];
  out.value = value[best];
  return out;
}

SearchResult grid_maximize(const Objective& f, const GridSpec& spec,
                           const SearchOptions& options) {
  const Eigen::Index d = spec.center.size();
  const int k = spec.points_per_axis;
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "search dimension must be positive");
  if (k < 3 || !(spec.half_width > 0.0) || spec.refinement_rounds < 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid needs >= 3 points per axis, a positive half-width and "
                "nonnegative refinement rounds");
  }
  if (grid_size(d, k) > static_cast<double>(options.budget)) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(k) + " points per axis in " + std::to_string(d) +
                    " dimensions exceeds the evaluation budget");
  }

  SearchResult out;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid_size(d, k)));
  for_each_node(spec.center, spec.half_width, k, [&](const Vec& x, const std::vector<int>&) {
    values.push_back(safe_eval(f, x));
  });
  out.evaluations = values.size();
  auto node_index = [&](std::size_t flat, Eigen::Index axis) {
    for (Eigen::Index a = d - 1; a > axis; --a) flat /= static_cast<std::size_t>(k);
    return static_cast<int>(flat % static_cast<std::size_t>(k));
  };

  // Well-separated top nodes seed independent refinements.
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  const int separation =
      std::max(1, static_cast<int>(std::ceil(options.shrink * (k - 1) / 2.0)));
  std::vector<std::size_t> seeds;
  for (std::size_t i : order) {
    if (static_cast<int>(seeds.size()) >= std::max(1, options.starts)) break;
    bool far = true;
    for (std::size_t s : seeds) {
      int cheb = 0;
      for (Eigen::Index a = 0; a < d; ++a) {
        cheb = std::max(cheb, std::abs(node_index(i, a) - node_index(s, a)));
      }
      if (cheb <= separation) {
        far = false;
        break;
      }
    }
    if (far) seeds.push_back(i);
  }

  const double step = 2.0 * spec.half_width / (k - 1);
  const int refine_k =
      spec.refinement_rounds > 0
          ? points_for_budget(d, options.budget, std::max(3, options.refine_points_per_axis))
          : 3;

  out.round_values.assign(static_cast<std::size_t>(spec.refinement_rounds) + 1, kNegInf);
  out.round_values[0] = values[order.front()];
  double best_hw = spec.half_width;
  out.value = kNegInf;
  for (std::size_t seed : seeds) {
    Vec incumbent(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      incumbent(a) = spec.center(a) - spec.half_width +
                     step * node_index(seed, a);
    }
    double best = values[seed];
    double hw = spec.half_width;
    for (int r = 1; r <= spec.refinement_rounds; ++r) {
      hw *= options.shrink;
      Vec next = incumbent;
      double next_value = best;
      for_each_node(incumbent, hw, refine_k, [&](const Vec& x, const std::vector<int>&) {
        const double v = safe_eval(f, x);
        if (v > next_value) {
          next_value = v;
          next = x;
        }
      });
      out.evaluations += static_cast<std::size_t>(grid_size(d, refine_k));
      incumbent = next;
      best = next_value;
      auto& slot = out.round_values[static_cast<std::size_t>(r)];
      slot = std::max(slot, best);
    }
    if (best > out.value) {
      out.value = best;
      out.argmax = incumbent;
      best_hw = hw;
    }
  }
  for (std::size_t r = 1; r < out.round_values.size(); ++r) {
    out.round_values[r] = std::max(out.round_values[r], out.round_values[r - 1]);
  }

  if (options.polish_iterations > 0) {
    const SearchResult polished =
        nelder_mead_maximize(f, out.argmax, best_hw * options.shrink, options.polish_iterations);
    out.evaluations += polished.evaluations;
    if (polished.value > out.value) {
      out.value = polished.value;
      out.argmax = polished.argmax;
    }
  }
  return out;
}

double f_value(const Vec& p, const Vec& attacker, const Vec& defender, double alpha,
               const Tolerances& tol) {
  if (std::abs(height(p)) > tol.absolute) {
    throw Error(ErrorCode::NotOnTargetHyperplane,
                "F is defined for points on the target hyperplane");
  }
  return (p - defender).norm() - (p - attacker).norm() / alpha;
}

Vec oracle_otp_1v1(const Vec& attacker, const Vec& defender, double alpha,
                   const OracleOptions& options) {
  check_oracle_dim(attacker.size());
  const Pawn a = pawn(attacker);
  const Pawn d = pawn(defender);
  const Objective f = [&](const Vec& q) { return dist(q, d) - dist(q, a) / alpha; };
  // Beyond this lateral radius F is below its value under the attacker.
  const double radius =
      (alpha * (attacker - defender).norm() + std::abs(height(attacker))) / (1.0 - alpha) + 1.0;
  return compose(search(f, a.lat, radius, options).argmax, 0.0);
}

OracleKindResult oracle_kind(const Scenario& scenario, const OracleOptions& options) {
  check_canonical(scenario);
  const double alpha = scenario.alpha;
  const Pawn a = pawn(scenario.attacker);
  const Pawn d1 = pawn(scenario.defender1);
  const Pawn d2 = pawn(scenario.defender2);
  const Objective g = [&](const Vec& q) {
    const double ra = dist(q, a);
    return std::min(alpha * dist(q, d1) - ra, alpha * dist(q, d2) - ra);
  };
  // Outside this radius g <= -(1 - alpha), so the box holds every winning point.
  const double reach = std::min((scenario.attacker - scenario.defender1).norm(),
                                (scenario.attacker - scenario.defender2).norm());
  const double radius = alpha * reach / (1.0 - alpha) + 1.0;
  const SearchResult r = search(g, a.lat, radius, options);

  OracleKindResult out;
  out.best_margin = r.value;
  out.best_point = compose(r.argmax, 0.0);
  if (r.value > options.margin) {
    out.verdict = OracleVerdict::AttackerWins;
  } else if (r.value < -options.margin) {
    out.verdict = OracleVerdict::DefendersWin;
  } else {
    out.verdict = OracleVerdict::Inconclusive;
  }
  return out;
}

OracleDwsResult oracle_otp_dws(const Scenario& scenario, const OracleOptions& options) {
  check_canonical(scenario);
  const Eigen::Index n = scenario.dim();
  const ApolloniusBall b1 = apollonius(scenario.attacker, scenario.defender1, scenario.alpha);
  const ApolloniusBall b2 = apollonius(scenario.attacker, scenario.defender2, scenario.alpha);
  const double gap = (b2.center - b1.center).norm();
  const double slack = 1e-12 * (1.0 + b1.radius + b2.radius);
  if (gap == 0.0 || gap > b1.radius + b2.radius + slack ||
      gap < std::abs(b1.radius - b2.radius) - slack) {
    throw Error(ErrorCode::EmptyIntersection, "the Apollonius spheres do not intersect");
  }
  const Vec u = (b2.center - b1.center) / gap;
  const double along = (gap * gap + b1.radius * b1.radius - b2.radius * b2.radius) / (2.0 * gap);
  const Vec c = b1.center + along * u;
  const double rho = std::sqrt(std::max(b1.radius * b1.radius - along * along, 0.0));

  // Orthonormal basis of the plane orthogonal to u.
  const Eigen::HouseholderQR<Mat> qr(u);
  const Mat q = qr.householderQ();
  const Mat basis = q.rightCols(n - 1);

  if (n == 2) {
    const Vec lo = c + rho * basis.col(0);
    const Vec hi = c - rho * basis.col(0);
    return height(hi) < height(lo) ? OracleDwsResult{hi, height(hi)}
                                   : OracleDwsResult{lo, height(lo)};
  }

  const Vec vertical = basis.row(n - 1).transpose();
  const double cn = height(c);
  Vec beta(n - 1);
  const Objective f = [&](const Vec& angles) {
    sphere_point(angles, beta);
    return -(cn + rho * beta.dot(vertical));
  };
  const SearchResult r = search(f, Vec::Zero(n - 2), kPi, options);
  sphere_point(r.argmax, beta);
  const Vec point = c + rho * (basis * beta);
  return {point, height(point)};
}

Vec oracle_aws_target(const Scenario& scenario, const OracleOptions& options) {
  check_canonical(scenario);
  const double alpha = scenario.alpha;
  const Pawn a = pawn(scenario.attacker);
  const Pawn d1 = pawn(scenario.defender1);
  const Pawn d2 = pawn(scenario.defender2);
  const Objective f = [&](const Vec& q) {
    const double ta = dist(q, a) / alpha;
    return std::min(dist(q, d1) - ta, dist(q, d2) - ta);
  };
  const double reach = std::min((scenario.attacker - scenario.defender1).norm(),
                                (scenario.attacker - scenario.defender2).norm());
  const double radius = alpha * reach / (1.0 - alpha) + 1.0;
  const SearchResult r = search(f, a.lat, radius, options);
  if (!(r.value > 0.0)) {
    throw Error(ErrorCode::NoWinningPoint,
                "no target point found that the attacker reaches first");
  }
  return compose(r.argmax, 0.0);
}

AttackerResponse oracle_attacker_response(const Vec& attacker,
                                          const std::vector<Vec>& intercepting_defenders,
                                          double alpha, const OracleOptions& options) {
  const Eigen::Index n = attacker.size();
  check_oracle_dim(n);
  if (!(height(attacker) > 0.0)) {
    throw Error(ErrorCode::AttackerNotInPlay, "attacker is not in the play subspace");
  }
  std::vector<ApolloniusBall> balls;
  for (const Vec& d : intercepting_defenders) balls.push_back(apollonius(attacker, d, alpha));

  const double start_height = height(attacker);
  // Height where the straight run along u ends, and whether it ends in capture.
  auto run = [&](const Vec& u, double& s_end) {
    double s_exit = std::numeric_limits<double>::infinity();
    for (const ApolloniusBall& b : balls) {
      if (auto s = ray_exit_distance(b, attacker, u)) s_exit = std::min(s_exit, *s);
    }
    const double s_target = u(n - 1) < 0.0 ? start_height / -u(n - 1)
                                           : std::numeric_limits<double>::infinity();
    if (s_exit <= s_target) {
      s_end = s_exit;
      return true;
    }
    s_end = s_target;
    return false;
  };

  Vec u(n);
  const Objective f = [&](const Vec& angles) {
    sphere_point(angles, u);
    double s = 0.0;
    if (!run(u, s)) return 0.0;
    if (!std::isfinite(s)) return kNegInf;
    return -(start_height + u(n - 1) * s);
  };
  const SearchResult r = search(f, Vec::Zero(n - 1), kPi, options);

  AttackerResponse out;
  out.direction = Vec(n);
  sphere_point(r.argmax, out.direction);
  double s = 0.0;
  out.captured = run(out.direction, s);
  out.target = attacker + s * out.direction;
  out.capture_height = out.captured ? height(out.target) : 0.0;
  return out;
}

}  // namespace subguard
