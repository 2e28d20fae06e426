#ifndef QP1QC_IO_HPP
#define QP1QC_IO_HPP

#include <string>

#include "qp1qc/instance.hpp"
#include "qp1qc/oracle.hpp"
#include "qp1qc/pencil.hpp"
#include "qp1qc/solution.hpp"

namespace qp1qc {

/// Instance document: {"n": int, "A": [n*n row-major], "B": [...],
/// "f": [n], "g": [n], "mu": number}. A and B accept nested rows as well;
/// both are symmetrized on load and rejected when the asymmetry exceeds
/// 1e-8 * scale. Throws ParseError naming the offending key.
Qp1qcInstance parse_instance_json(const std::string& text);
Qp1qcInstance load_instance(const std::string& path);

struct ReportTimings {
  double pencil_ms = 0.0, sdc_ms = 0.0, solve_ms = 0.0, total_ms = 0.0;
};

struct OracleCheck {
  bool ran = false;
  OracleReport rep;
  bool agrees = false;
};

/// 17 significant digits; infinities as "+inf"/"-inf" sentinels.
std::string format_double(double v);

std::string pencil_json(const PencilInterval& iv);
std::string sdc_json(const SdcResult& sdc);
std::string certificate_json(const KktCertificate& cert);

std::string solve_report_json(const Solution& sol, const PencilInterval& iv,
                              const SdcResult& sdc, const ReportTimings& t,
                              const OracleCheck* oracle = nullptr);
std::string solve_report_text(const Solution& sol, const PencilInterval& iv,
                              const SdcResult& sdc, const ReportTimings& t,
                              const OracleCheck* oracle = nullptr);
std::string pencil_report_json(const PencilInterval& iv, const SdcResult& sdc,
                               const ReportTimings& t);
std::string pencil_report_text(const PencilInterval& iv, const SdcResult& sdc,
                               const ReportTimings& t);

}  // namespace qp1qc

#endif
