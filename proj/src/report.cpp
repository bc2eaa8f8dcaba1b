#include "bdlab/report.hpp"

#include <sstream>

#include <json.hpp>

namespace bdlab {

std::string render_report_text(const ComparisonReport& r) {
    std::ostringstream os;
    os << "comparison of c_k routes at k = " << r.k << "\n";
    os << "  context:            " << r.context << "\n";
    os << "  zeros used:         " << r.zeros_used
       << " (table " << r.zero_table_fingerprint << ")\n";
    os << "  c_generic:          " << r.c_generic << "\n";
    os << "  c_trend:            " << r.c_trend << "\n";
    os << "  c_oscillation:      " << r.c_osc_exact << "\n";
    os << "  c_explicit:         " << r.c_explicit << "\n";
    os << "  |difference|:       " << r.abs_difference << "\n";
    if (r.agreement.all) {
        os << "  agreement:          all digits at working precision\n";
    } else {
        long d = r.agreement.digits;
        os << "  agreement:          " << d << " digits\n";
        os << "  bracket:            10^-" << (d + 1)
           << " < |c_generic/c_explicit - 1| <= 10^-" << d << "\n";
    }
    os << "  generic delivers:   ~" << r.delivered_digits << " digits at this precision\n";
    os << "  generator:          " << r.generator << "\n";
    return os.str();
}

std::string render_report_json(const ComparisonReport& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["zeros_used"] = r.zeros_used;
    j["context"] = r.context;
    j["zero_table_fingerprint"] = r.zero_table_fingerprint;
    j["c_generic"] = r.c_generic;
    j["c_trend"] = r.c_trend;
    j["c_oscillation_exact"] = r.c_osc_exact;
    j["c_explicit"] = r.c_explicit;
    j["abs_difference"] = r.abs_difference;
    j["agreement_all"] = r.agreement.all;
    j["agreement_digits"] = r.agreement.digits;
    j["delivered_digits"] = r.delivered_digits;
    j["generator"] = r.generator;
    return j.dump(2) + "\n";
}

}  // namespace bdlab
