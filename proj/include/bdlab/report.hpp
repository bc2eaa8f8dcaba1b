#pragma once

#include <string>

#include "bdlab/agreement.hpp"

namespace bdlab {

/// Everything cmd_compare measured, with full-precision decimal strings so
/// the machine-readable form reproduces the run exactly.
struct ComparisonReport {
    long k = 0;
    long zeros_used = 0;
    std::string context;
    std::string zero_table_fingerprint;
    std::string c_generic;
    std::string c_trend;
    std::string c_osc_exact;
    std::string c_explicit;
    Agreement agreement;
    std::string abs_difference;
    long delivered_digits = 0;
    std::string generator;
};

std::string render_report_text(const ComparisonReport& r);
std::string render_report_json(const ComparisonReport& r);

}  // namespace bdlab
