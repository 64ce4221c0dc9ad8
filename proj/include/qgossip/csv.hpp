#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "qgossip/analysis.hpp"
#include "qgossip/experiments.hpp"
#include "qgossip/sim.hpp"

namespace qgossip {

/// 17 significant digits, enough to round-trip any double.
std::string csv_number(double v);
/// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);
void write_batch_csv(std::ostream& out, std::span<const TrialResult> trials);
void write_fig1_csv(std::ostream& out, std::span<const Fig1Row> rows);
void write_fig2_csv(std::ostream& out, std::span<const Fig2Row> rows);
void write_covariance_csv(std::ostream& out, std::span<const CovarianceRow> rows);

}  // namespace qgossip
