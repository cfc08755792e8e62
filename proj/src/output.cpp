#include "lambdadicke/output.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace ldk::output {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

void write_header(std::ostream& out, const std::string& tool_version, const std::string& subcommand,
                  const Record& params) {
  out << "# lambdadicke " << tool_version << '\n';
  out << "# subcommand = " << subcommand << '\n';
  for (const auto& [k, v] : params) out << "# " << k << " = " << v << '\n';
}

void write_record(std::ostream& out, const Record& record) {
  for (const auto& [k, v] : record) out << k << " = " << v << '\n';
}

void write_scan_csv(std::ostream& out, const PhaseDiagram& d, const TrkScale& scale) {
  out << "g1,g2,g1_over_trk,g2_over_trk,psi2,psi3,phi1,phi2,e0,phase,converged\n";
  const std::size_t n1 = d.g1_axis.size();
  for (std::size_t j = 0; j < d.g2_axis.size(); ++j)
    for (std::size_t i = 0; i < n1; ++i) {
      const double g1 = d.g1_axis[i], g2 = d.g2_axis[j];
      out << format_real(g1) << ',' << format_real(g2) << ','
          << format_real(scale.g1_trk > 0.0 ? g1 / scale.g1_trk : 0.0) << ','
          << format_real(scale.g2_trk > 0.0 ? g2 / scale.g2_trk : 0.0) << ',';
      const std::size_t k = j * n1 + i;
      if (d.cell_failed[k]) {
        out << "nan,nan,nan,nan,nan,failed,false\n";
        continue;
      }
      const MeanFieldSolution& s = d.cells[k];
      out << format_real(s.psi2) << ',' << format_real(s.psi3) << ',' << format_real(s.phi1) << ','
          << format_real(s.phi2) << ',' << format_real(s.e0) << ',' << to_string(s.phase) << ','
          << format_bool(s.converged) << '\n';
    }
}

void write_boundary_csv(std::ostream& out, const std::vector<TransitionProbe>& probes) {
  out << "g2,g1_star,jump,order\n";
  for (const auto& p : probes)
    out << format_real(p.g2_fixed()) << ',' << format_real(p.g1_star()) << ',' << format_real(p.jump) << ','
        << to_string(p.order) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "chi,kappa,ray,g_c\n";
  for (const auto& r : rows)
    out << format_real(r.chi) << ',' << format_real(r.kappa) << ',' << to_string(r.ray) << ','
        << (r.g_c ? format_real(*r.g_c) : std::string()) << '\n';
}

std::string scan_gnuplot_script(const std::string& csv) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'g1/g1_TRK'\nset ylabel 'g2/g2_TRK'\n"
    << "set view map\nset pm3d map\nset multiplot layout 1,2\n"
    << "set title 'Psi2'\nsplot '" << csv << "' every ::1 using 3:4:5 with image notitle\n"
    << "set title 'Psi3'\nsplot '" << csv << "' every ::1 using 3:4:6 with image notitle\n"
    << "unset multiplot\n";
  return s.str();
}

std::string boundary_gnuplot_script(const std::string& csv) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'g1*'\nset ylabel 'g2'\n"
    << "plot '" << csv << "' every ::1 using 2:1 with linespoints title 'boundary'\n";
  return s.str();
}

std::string sweep_gnuplot_script(const std::string& csv) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set xlabel 'chi'\nset ylabel 'g_c'\n"
    << "plot for [r in 'gc_0 0_gc gc_gc'] '" << csv
    << "' every ::1 using 1:(strcol(3) eq r ? $4 : 1/0):(column(2)) with points palette title r\n";
  return s.str();
}

}  // namespace ldk::output
