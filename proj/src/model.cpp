#include "lambdadicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambdadicke/errors.hpp"

namespace ldk {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

constexpr double kUnitTol = 1e-12;
constexpr double kZeroOverlap = 1e-14;

}  // namespace

std::vector<Violation> validate(const ModelParams& p) {
  std::vector<Violation> out;
  auto need = [&](bool ok, const char* field, const char* rule) {
    if (!ok) out.push_back({field, rule});
  };

  const std::pair<const char*, double> all[] = {
      {"delta", p.delta},   {"big_delta", p.big_delta}, {"omega1", p.omega1}, {"omega2", p.omega2},
      {"g1", p.g1},         {"g2", p.g2},               {"chi1", p.chi1},     {"chi2", p.chi2},
      {"kappa1", p.kappa1}, {"kappa2", p.kappa2},       {"kappa3", p.kappa3}};
  bool finite = true;
  for (const auto& [name, value] : all) {
    if (!std::isfinite(value)) {
      out.push_back({name, "finite"});
      finite = false;
    }
  }
  if (!finite) return out;

  need(p.big_delta > 0.0, "big_delta", "big_delta > 0");
  need(p.delta >= 0.0, "delta", "delta >= 0");
  need(p.delta <= p.big_delta, "delta", "delta <= big_delta");
  need(p.omega1 > 0.0, "omega1", "omega1 > 0");
  need(p.omega2 > 0.0, "omega2", "omega2 > 0");
  need(p.g1 >= 0.0, "g1", "g1 >= 0");
  need(p.g2 >= 0.0, "g2", "g2 >= 0");
  need(p.kappa1 >= 0.0, "kappa1", "kappa1 >= 0");
  need(p.kappa2 >= 0.0, "kappa2", "kappa2 >= 0");
  need(p.kappa3 >= 0.0, "kappa3", "kappa3 >= 0");

  if (p.omega1 > 0.0 && p.omega2 > 0.0) {
    const double a1 = p.omega1 + 4.0 * p.kappa1 * p.kappa1 / p.omega1;
    const double a2 = p.omega2 + 4.0 * p.kappa2 * p.kappa2 / p.omega2;
    const double k3sq = p.kappa3 * p.kappa3;
    const double cross = 16.0 * k3sq * k3sq / (p.omega1 * p.omega2);
    need(a1 * a2 > cross, "kappa3",
         "boson form positive definite: (omega1+4kappa1^2/omega1)(omega2+4kappa2^2/omega2) > "
         "16kappa3^4/(omega1 omega2)");
  }
  return out;
}

void require_valid(const ModelParams& params) {
  const auto violations = validate(params);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid model parameters:";
  for (const auto& v : violations) msg << " [" << v.field << ": " << v.rule << "]";
  throw ValidationError(msg.str());
}

TrkBounds trk_bounds(const ModelParams& p, double kappa) {
  require_valid(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ValidationError("trk_bounds: kappa must be >= 0");
  return {kappa * std::sqrt(p.big_delta / p.omega1), kappa * std::sqrt((p.big_delta - p.delta) / p.omega2)};
}

TrkCompliance check_trk_compliance(const ModelParams& p, double kappa) {
  const TrkBounds b = trk_bounds(p, kappa);
  TrkCompliance c;
  c.slack1 = b.g1_trk - p.g1;
  c.slack2 = b.g2_trk - p.g2;
  c.compliant = c.slack1 >= 0.0 && c.slack2 >= 0.0;
  return c;
}

AtomicMapping from_atomic(const AtomicConfig& cfg, bool allow_parallel_polarizations) {
  const double n1 = norm(cfg.eps1);
  const double n2 = norm(cfg.eps2);
  if (std::abs(n1 - 1.0) > kUnitTol) throw ValidationError("eps1 must be a unit vector");
  if (std::abs(n2 - 1.0) > kUnitTol) throw ValidationError("eps2 must be a unit vector");
  const double d31n = norm(cfg.d31);
  const double d32n = norm(cfg.d32);
  if (!(d31n > 0.0)) throw ValidationError("d31 must be nonzero");
  if (!(d32n > 0.0)) throw ValidationError("d32 must be nonzero");

  AtomicMapping m;
  m.alpha = dot(cfg.eps1, cfg.eps2);
  m.alpha11 = std::abs(dot(cfg.d31, cfg.eps1)) / d31n;
  m.alpha12 = std::abs(dot(cfg.d31, cfg.eps2)) / d31n;
  m.alpha21 = std::abs(dot(cfg.d32, cfg.eps1)) / d32n;
  m.alpha22 = std::abs(dot(cfg.d32, cfg.eps2)) / d32n;

  if (m.alpha11 < kZeroOverlap) throw ValidationError("alpha11 = 0: d31 is orthogonal to eps1");
  if (m.alpha22 < kZeroOverlap) throw ValidationError("alpha22 = 0: d32 is orthogonal to eps2");
  if (m.alpha < -kZeroOverlap) throw ValidationError("alpha = eps1.eps2 < 0 cannot be represented by a real kappa3");
  if (m.alpha >= 1.0 - kUnitTol && !allow_parallel_polarizations)
    throw ValidationError("eps1 and eps2 are parallel; pass allow_parallel_polarizations to force");
  m.alpha = std::clamp(m.alpha, 0.0, 1.0);

  ModelParams& p = m.params;
  p.delta = cfg.delta;
  p.big_delta = cfg.big_delta;
  p.omega1 = cfg.omega1;
  p.omega2 = cfg.omega2;
  p.g1 = cfg.g1;
  p.g2 = cfg.g2;
  if (cfg.omega1 > 0.0 && cfg.omega2 > 0.0) {
    p.chi1 = m.alpha12 / m.alpha11 * std::sqrt(cfg.omega1 / cfg.omega2);
    p.chi2 = m.alpha21 / m.alpha22 * std::sqrt(cfg.omega2 / cfg.omega1);
  }
  p.kappa1 = cfg.kappa;
  p.kappa2 = cfg.kappa;
  p.kappa3 = cfg.kappa * std::sqrt(m.alpha);

  require_valid(p);
  m.bounds = trk_bounds(p, cfg.kappa);
  m.compliance = check_trk_compliance(p, cfg.kappa);
  return m;
}

}  // namespace ldk
