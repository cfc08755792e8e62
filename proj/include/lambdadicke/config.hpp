#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lambdadicke/model.hpp"
#include "lambdadicke/nogo.hpp"

namespace ldk::config {

/// One `key = value` line of a structured text file.
struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped.
/// Throws ValidationError naming the line on malformed input or duplicate keys.
std::vector<Entry> parse_entries(std::istream& in, const std::string& source);

double parse_real(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);
Vec3 parse_vec3(const std::string& text, const std::string& what);

enum class Mode { Abstract, Atomic };

/// Model parameters as read from a file, before mode resolution.
struct ParamSet {
  Mode mode = Mode::Abstract;
  ModelParams abstract;
  AtomicConfig atomic;
  bool allow_parallel_polarizations = false;
  bool mode_fixed = false;  // set once a file or override has chosen the mode

  /// Sets one key; the key must belong to the current mode.
  void set(const std::string& key, const std::string& value, const std::string& where);

  /// Abstract parameters (mapped from the atomic description if needed).
  ModelParams resolve() const;
  /// Diamagnetic strength used for the TRK coupling scales.
  double trk_kappa() const;
  /// `key = value` lines of every key of the active mode, in fixed order.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

const std::vector<std::string>& abstract_keys();
const std::vector<std::string>& atomic_keys();

/// Mode is inferred from the keys; mixing keys of both modes is an error.
ParamSet parse_params(std::istream& in, const std::string& source);
ParamSet load_params(const std::string& path);

/// Applies `key=value` overrides. A file-less ParamSet takes its mode from
/// the first mode-specific key (abstract if there is none).
void apply_overrides(ParamSet& params, const std::vector<std::string>& overrides);

/// Keys: energies (list), omega, kappa, g (row-major upper triangle,
/// nu (nu - 1) / 2 values).
nogo::MultiLevelModel parse_multilevel(std::istream& in, const std::string& source);
nogo::MultiLevelModel load_multilevel(const std::string& path);

/// `NAME=VAL` tolerance overrides.
std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items,
                                               const std::vector<std::string>& known);

}  // namespace ldk::config
