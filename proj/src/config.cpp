#include "lambdadicke/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "lambdadicke/errors.hpp"
#include "lambdadicke/output.hpp"

namespace ldk::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool contains(const std::vector<std::string>& keys, const std::string& key) {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string vec3_text(const Vec3& v) {
  return output::format_real(v[0]) + "," + output::format_real(v[1]) + "," + output::format_real(v[2]);
}

}  // namespace

std::vector<Entry> parse_entries(std::istream& in, const std::string& source) {
  std::vector<Entry> out;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string where = source + ":" + std::to_string(line);
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
    Entry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (e.key.empty()) throw ValidationError(where + ": missing key");
    if (e.value.empty()) throw ValidationError(where + ": missing value for key '" + e.key + "'");
    if (!seen.insert(e.key).second) throw ValidationError(where + ": duplicate key '" + e.key + "'");
    out.push_back(std::move(e));
  }
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (t.empty() || ec != std::errc() || ptr != end)
    throw ValidationError(what + ": cannot parse '" + text + "' as a real number");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, what));
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

Vec3 parse_vec3(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 3) throw ValidationError(what + ": expected 3 comma-separated reals");
  return {v[0], v[1], v[2]};
}

const std::vector<std::string>& abstract_keys() {
  static const std::vector<std::string> keys{"delta", "big_delta", "omega1", "omega2", "g1", "g2",
                                             "chi1",  "chi2",      "kappa1", "kappa2", "kappa3"};
  return keys;
}

const std::vector<std::string>& atomic_keys() {
  static const std::vector<std::string> keys{"delta", "big_delta", "omega1", "omega2", "g1", "g2",
                                             "kappa", "eps1",      "eps2",   "d31",    "d32"};
  return keys;
}

void ParamSet::set(const std::string& key, const std::string& value, const std::string& where) {
  const std::string what = where + ": key '" + key + "'";
  if (mode == Mode::Abstract) {
    ModelParams& p = abstract;
    double* slot = key == "delta"       ? &p.delta
                   : key == "big_delta" ? &p.big_delta
                   : key == "omega1"    ? &p.omega1
                   : key == "omega2"    ? &p.omega2
                   : key == "g1"        ? &p.g1
                   : key == "g2"        ? &p.g2
                   : key == "chi1"      ? &p.chi1
                   : key == "chi2"      ? &p.chi2
                   : key == "kappa1"    ? &p.kappa1
                   : key == "kappa2"    ? &p.kappa2
                   : key == "kappa3"    ? &p.kappa3
                                        : nullptr;
    if (!slot) {
      if (contains(atomic_keys(), key)) throw ValidationError(what + " belongs to atomic mode; parameters are in abstract mode");
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
    *slot = parse_real(value, what);
    return;
  }
  AtomicConfig& a = atomic;
  if (key == "eps1") a.eps1 = parse_vec3(value, what);
  else if (key == "eps2") a.eps2 = parse_vec3(value, what);
  else if (key == "d31") a.d31 = parse_vec3(value, what);
  else if (key == "d32") a.d32 = parse_vec3(value, what);
  else {
    double* slot = key == "delta"       ? &a.delta
                   : key == "big_delta" ? &a.big_delta
                   : key == "omega1"    ? &a.omega1
                   : key == "omega2"    ? &a.omega2
                   : key == "g1"        ? &a.g1
                   : key == "g2"        ? &a.g2
                   : key == "kappa"     ? &a.kappa
                                        : nullptr;
    if (!slot) {
      if (contains(abstract_keys(), key)) throw ValidationError(what + " belongs to abstract mode; parameters are in atomic mode");
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
    *slot = parse_real(value, what);
  }
}

ModelParams ParamSet::resolve() const {
  if (mode == Mode::Abstract) return abstract;
  return from_atomic(atomic, allow_parallel_polarizations).params;
}

double ParamSet::trk_kappa() const { return mode == Mode::Abstract ? abstract.kappa1 : atomic.kappa; }

std::vector<std::pair<std::string, std::string>> ParamSet::describe() const {
  using output::format_real;
  if (mode == Mode::Abstract) {
    const ModelParams& p = abstract;
    return {{"delta", format_real(p.delta)},   {"big_delta", format_real(p.big_delta)},
            {"omega1", format_real(p.omega1)}, {"omega2", format_real(p.omega2)},
            {"g1", format_real(p.g1)},         {"g2", format_real(p.g2)},
            {"chi1", format_real(p.chi1)},     {"chi2", format_real(p.chi2)},
            {"kappa1", format_real(p.kappa1)}, {"kappa2", format_real(p.kappa2)},
            {"kappa3", format_real(p.kappa3)}};
  }
  const AtomicConfig& a = atomic;
  return {{"delta", format_real(a.delta)},   {"big_delta", format_real(a.big_delta)},
          {"omega1", format_real(a.omega1)}, {"omega2", format_real(a.omega2)},
          {"g1", format_real(a.g1)},         {"g2", format_real(a.g2)},
          {"kappa", format_real(a.kappa)},   {"eps1", vec3_text(a.eps1)},
          {"eps2", vec3_text(a.eps2)},       {"d31", vec3_text(a.d31)},
          {"d32", vec3_text(a.d32)}};
}

ParamSet parse_params(std::istream& in, const std::string& source) {
  const auto entries = parse_entries(in, source);
  ParamSet out;
  bool abstract_only = false, atomic_only = false;
  for (const auto& e : entries) {
    const bool in_abstract = contains(abstract_keys(), e.key);
    const bool in_atomic = contains(atomic_keys(), e.key);
    if (!in_abstract && !in_atomic)
      throw ValidationError(source + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    if (in_abstract && !in_atomic) abstract_only = true;
    if (in_atomic && !in_abstract) atomic_only = true;
    if (abstract_only && atomic_only)
      throw ValidationError(source + ":" + std::to_string(e.line) + ": key '" + e.key +
                            "' mixes abstract and atomic parameter modes");
  }
  out.mode = atomic_only ? Mode::Atomic : Mode::Abstract;
  out.mode_fixed = !entries.empty();
  for (const auto& e : entries) out.set(e.key, e.value, source + ":" + std::to_string(e.line));
  return out;
}

ParamSet load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read parameter file '" + path + "'");
  return parse_params(in, path);
}

void apply_overrides(ParamSet& params, const std::vector<std::string>& overrides) {
  std::vector<std::pair<std::string, std::string>> items;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--set '" + item + "': expected key=value");
    items.emplace_back(trim(item.substr(0, eq)), item.substr(eq + 1));
  }
  // Without a file the first mode-specific key decides the mode for all overrides.
  if (!params.mode_fixed) {
    for (const auto& [key, value] : items) {
      const bool in_abstract = contains(abstract_keys(), key), in_atomic = contains(atomic_keys(), key);
      if (in_abstract == in_atomic) continue;
      params.mode = in_atomic ? Mode::Atomic : Mode::Abstract;
      params.mode_fixed = true;
      break;
    }
  }
  for (const auto& [key, value] : items) params.set(key, value, "--set");
}

nogo::MultiLevelModel parse_multilevel(std::istream& in, const std::string& source) {
  const auto entries = parse_entries(in, source);
  nogo::MultiLevelModel model;
  std::vector<double> upper;
  bool have_energies = false, have_omega = false, have_kappa = false, have_g = false;
  for (const auto& e : entries) {
    const std::string what = source + ":" + std::to_string(e.line) + ": key '" + e.key + "'";
    if (e.key == "energies") {
      model.energies = parse_list(e.value, what);
      have_energies = true;
    } else if (e.key == "omega") {
      model.omega = parse_real(e.value, what);
      have_omega = true;
    } else if (e.key == "kappa") {
      model.kappa = parse_real(e.value, what);
      have_kappa = true;
    } else if (e.key == "g") {
      upper = parse_list(e.value, what);
      have_g = true;
    } else {
      throw ValidationError(source + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    }
  }
  if (!have_energies) throw ValidationError(source + ": missing key 'energies'");
  if (!have_omega) throw ValidationError(source + ": missing key 'omega'");
  if (!have_kappa) throw ValidationError(source + ": missing key 'kappa'");
  if (!have_g) throw ValidationError(source + ": missing key 'g'");
  const int nu = model.levels();
  if (upper.size() != static_cast<std::size_t>(nu * (nu - 1) / 2))
    throw ValidationError(source + ": key 'g' needs nu (nu - 1) / 2 = " + std::to_string(nu * (nu - 1) / 2) +
                          " values");
  model.couplings = Eigen::MatrixXd::Zero(nu, nu);
  std::size_t k = 0;
  for (int n = 0; n < nu; ++n)
    for (int m = n + 1; m < nu; ++m, ++k) model.couplings(n, m) = model.couplings(m, n) = upper[k];
  nogo::validate(model);
  return model;
}

nogo::MultiLevelModel load_multilevel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read model file '" + path + "'");
  return parse_multilevel(in, path);
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items,
                                               const std::vector<std::string>& known) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--tol '" + item + "': expected NAME=VAL");
    const std::string name = trim(item.substr(0, eq));
    if (!contains(known, name)) throw ValidationError("--tol: unknown tolerance '" + name + "'");
    const double v = parse_real(item.substr(eq + 1), "--tol " + name);
    if (!(v > 0.0)) throw ValidationError("--tol " + name + ": must be > 0");
    out[name] = v;
  }
  return out;
}

}  // namespace ldk::config
