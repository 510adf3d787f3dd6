#include "csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <vector>

namespace dqd::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::vector<std::string> echoed(const ModelSpec& s) {
  const double J = s.U > 0 ? 4.0 * s.t * s.t / s.U : kNaN;
  double gamma = kNaN;
  if (s.lead_len == 0)
    gamma = 0.0;
  else if (s.t0 > 0)
    gamma = hybridization_width(s).value();
  return {std::string(to_string(s.topology.kind)),
          std::to_string(s.lead_len),
          format_number(s.t),
          format_number(s.t_prime),
          format_number(s.U),
          format_number(s.T),
          format_number(s.B),
          format_number(J),
          format_number(gamma),
          format_number(gamma > 0 ? J / gamma : kNaN)};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", v);
}

std::string result_header() {
  return "topology,lead_len,t,t_prime,U,T,B,J,Gamma,J_over_Gamma,"
         "C,C_ud,C_par,P_ud,P_par,C_oracle,spin_dot,dn2_A,n_A,E0,log_Z_shifted,status";
}

std::string result_row(const PointResult& r) {
  auto cells = echoed(r.spec);
  const auto& c = r.concurrence;
  const auto& cs = r.correlators;
  for (double v : {c.concurrence.value_or(kNaN), c.c_antiparallel, c.c_parallel,
                   c.p_antiparallel, c.p_parallel, c.oracle.value_or(kNaN),
                   cs.spin_dot, cs.dn2_a, cs.n_a, r.ground_energy,
                   r.log_partition_shifted})
    cells.push_back(format_number(v));
  cells.emplace_back("ok");
  return join(cells);
}

std::string error_row(const ModelSpec& spec, int code) {
  auto cells = echoed(spec);
  for (int i = 0; i < 11; ++i) cells.emplace_back("");
  cells.push_back("error:" + std::to_string(code));
  return join(cells);
}

}  // namespace dqd::cli
