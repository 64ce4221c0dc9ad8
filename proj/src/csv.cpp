#include "qgossip/csv.hpp"

#include <fmt/format.h>

namespace qgossip {

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "step,min,max,spread,mse_from_x0avg,avg\n";
  for (const auto& r : rows) {
    out << r.step << ',' << csv_number(r.min) << ',' << csv_number(r.max) << ','
        << csv_number(r.spread) << ',' << csv_number(r.mse) << ',' << csv_number(r.avg) << '\n';
  }
}

void write_batch_csv(std::ostream& out, std::span<const TrialResult> trials) {
  out << "trial,seed,converged,t_con,t_all,alpha,z,max_dev\n";
  std::size_t index = 0;
  for (const auto& r : trials) {
    out << index++ << ',' << r.seed << ',' << (r.converged ? 1 : 0) << ',';
    if (r.t_con) out << *r.t_con;
    out << ',';
    if (r.t_all) out << *r.t_all;
    out << ',';
    if (r.alpha) out << csv_number(*r.alpha);
    out << ',';
    if (r.z) out << csv_number(*r.z);
    out << ',' << csv_number(r.max_dev) << '\n';
  }
}

void write_fig1_csv(std::ostream& out, std::span<const Fig1Row> rows) {
  out << "N,quantizer,init_interval,z_mean,z_std\n";
  for (const auto& r : rows) {
    out << r.n << ',' << csv_field(quantizer_name(r.quantizer)) << ','
        << csv_field(fmt::format("{}:{}", r.interval.first, r.interval.second)) << ','
        << csv_number(r.z.mean) << ',' << csv_number(r.z.std) << '\n';
  }
}

void write_fig2_csv(std::ostream& out, std::span<const Fig2Row> rows) {
  out << "step,standard,totally,partially,compensating\n";
  for (const auto& r : rows) {
    out << r.step << ',' << csv_number(r.standard) << ',' << csv_number(r.totally) << ','
        << csv_number(r.partially) << ',' << csv_number(r.compensating) << '\n';
  }
}

void write_covariance_csv(std::ostream& out, std::span<const CovarianceRow> rows) {
  out << "step,frobenius_residual,trace\n";
  for (const auto& r : rows) {
    out << r.step << ',' << csv_number(r.frobenius_residual) << ',' << csv_number(r.trace)
        << '\n';
  }
}

}  // namespace qgossip
