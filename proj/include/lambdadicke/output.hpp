#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lambdadicke/phasemap.hpp"

namespace ldk::output {

using Record = std::vector<std::pair<std::string, std::string>>;

/// Shortest-stable text of a double: printf "%.17g".
std::string format_real(double v);
std::string format_bool(bool v);

/// Comment block "# key = value" written at the top of every output file.
void write_header(std::ostream& out, const std::string& tool_version, const std::string& subcommand,
                  const Record& params);

/// One `key = value` line per entry.
void write_record(std::ostream& out, const Record& record);

struct TrkScale {
  double g1_trk = 0.0;
  double g2_trk = 0.0;
};

/// g1,g2,g1_over_trk,g2_over_trk,psi2,psi3,phi1,phi2,e0,phase,converged;
/// rows ordered by g2, then g1. Failed cells carry phase "failed".
void write_scan_csv(std::ostream& out, const PhaseDiagram& diagram, const TrkScale& scale);
/// g2,g1_star,jump,order
void write_boundary_csv(std::ostream& out, const std::vector<TransitionProbe>& probes);
/// chi,kappa,ray,g_c (empty g_c if no transition inside the search range)
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Gnuplot script rendering the scan CSV as two heat maps (Psi2, Psi3).
std::string scan_gnuplot_script(const std::string& csv_path);
std::string boundary_gnuplot_script(const std::string& csv_path);
std::string sweep_gnuplot_script(const std::string& csv_path);

}  // namespace ldk::output
