#include "qp1qc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qp1qc {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError(key, "missing key '" + key + "'");
  if (!j[key].is_number()) throw ParseError(key, "key '" + key + "' must be a number");
  return j[key].get<double>();
}

VectorXd get_vector(const json& j, const std::string& key, int n) {
  if (!j.contains(key)) throw ParseError(key, "missing key '" + key + "'");
  const json& a = j[key];
  if (!a.is_array() || static_cast<int>(a.size()) != n)
    throw ParseError(key, "key '" + key + "' must be an array of " + std::to_string(n) +
                              " numbers");
  VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    if (!a[i].is_number()) throw ParseError(key, "key '" + key + "' has a non-number entry");
    v[i] = a[i].get<double>();
  }
  return v;
}

MatrixXd get_matrix(const json& j, const std::string& key, int n) {
  if (!j.contains(key)) throw ParseError(key, "missing key '" + key + "'");
  const json& a = j[key];
  MatrixXd m(n, n);
  if (a.is_array() && static_cast<int>(a.size()) == n * n && (n == 0 || a[0].is_number())) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const json& e = a[i * n + k];
        if (!e.is_number()) throw ParseError(key, "key '" + key + "' has a non-number entry");
        m(i, k) = e.get<double>();
      }
    return m;
  }
  if (a.is_array() && static_cast<int>(a.size()) == n && (n == 0 || a[0].is_array())) {
    for (int i = 0; i < n; ++i) {
      const json& row = a[i];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ParseError(key, "key '" + key + "' row " + std::to_string(i) + " must have " +
                                  std::to_string(n) + " entries");
      for (int k = 0; k < n; ++k) {
        if (!row[k].is_number())
          throw ParseError(key, "key '" + key + "' has a non-number entry");
        m(i, k) = row[k].get<double>();
      }
    }
    return m;
  }
  throw ParseError(key, "key '" + key + "' must be a " + std::to_string(n) + "x" +
                            std::to_string(n) + " row-major array");
}

void check_symmetry(const MatrixXd& m, const std::string& key) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale)
    throw ParseError(key, "key '" + key + "' is not symmetric (max asymmetry " +
                              std::to_string(asym) + ")");
}

}  // namespace

Qp1qcInstance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("", "instance document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("n", "key 'n' must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw ParseError("n", "key 'n' must be >= 1");
  MatrixXd A = get_matrix(j, "A", n), B = get_matrix(j, "B", n);
  check_symmetry(A, "A");
  check_symmetry(B, "B");
  const VectorXd f = get_vector(j, "f", n), g = get_vector(j, "g", n);
  const double mu = get_number(j, "mu");
  try {
    return Qp1qcInstance(SymMatrix(A), SymMatrix(B), f, g, mu);
  } catch (const PreconditionViolated& e) {
    throw ParseError("", e.what());
  }
}

Qp1qcInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"+inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string vec_json(const VectorXd& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + "]";
}

const char* sdc_status_name(SdcResult::Status s) {
  switch (s) {
    case SdcResult::Status::Sdc: return "sdc";
    case SdcResult::Status::NotSdc: return "not_sdc";
    case SdcResult::Status::Unknown: return "unknown";
  }
  return "?";
}

std::string timings_json(const ReportTimings& t) {
  std::string s = "{";
  s += "\"pencil_ms\":" + format_double(t.pencil_ms);
  s += ",\"sdc_ms\":" + format_double(t.sdc_ms);
  s += ",\"solve_ms\":" + format_double(t.solve_ms);
  s += ",\"total_ms\":" + format_double(t.total_ms);
  return s + "}";
}

}  // namespace

std::string pencil_json(const PencilInterval& iv) {
  switch (iv.kind) {
    case PencilInterval::Kind::Empty: return "{\"kind\":\"empty\"}";
    case PencilInterval::Kind::Singleton:
      return "{\"kind\":\"singleton\",\"sigma\":" + format_double(iv.sigma) + "}";
    case PencilInterval::Kind::Interval:
      return "{\"kind\":\"interval\",\"lo\":" + format_double(iv.lo) +
             ",\"hi\":" + format_double(iv.hi) + "}";
  }
  return "{}";
}

std::string sdc_json(const SdcResult& sdc) {
  std::string s = "{\"status\":\"";
  s += sdc_status_name(sdc.status);
  s += "\"";
  if (sdc.status == SdcResult::Status::Sdc)
    s += ",\"cond_C\":" + format_double(sdc.cond_C);
  return s + "}";
}

std::string certificate_json(const KktCertificate& cert) {
  std::string s = "{";
  s += "\"feas_resid\":" + format_double(cert.feas_resid);
  s += ",\"stat_resid\":" + format_double(cert.stat_resid);
  s += ",\"comp_resid\":" + format_double(cert.comp_resid);
  s += ",\"pencil_min_eig\":" + format_double(cert.pencil_min_eig);
  s += ",\"passed\":";
  s += cert.passes() ? "true" : "false";
  return s + "}";
}

std::string solve_report_json(const Solution& sol, const PencilInterval& iv,
                              const SdcResult& sdc, const ReportTimings& t,
                              const OracleCheck* oracle) {
  std::string s = "{";
  s += "\"status\":\"";
  s += status_name(sol.status);
  s += "\",\"case\":\"" + sol.case_label + "\"";
  const bool att = sol.status == Solution::Status::Attained;
  const bool unatt = sol.status == Solution::Status::Unattained;
  s += ",\"value\":";
  s += att ? format_double(sol.value) : (unatt ? format_double(sol.infimum) : "null");
  s += ",\"x_star\":";
  s += att ? vec_json(sol.x_star) : "null";
  s += ",\"sigma_star\":";
  s += (att || unatt) ? format_double(sol.sigma_star) : "null";
  s += ",\"certificate\":";
  s += att ? certificate_json(sol.cert) : "null";
  if (sol.status == Solution::Status::UnboundedBelow) {
    s += ",\"ray\":{\"base\":" + vec_json(sol.ray.base) +
         ",\"dir\":" + vec_json(sol.ray.dir) + ",\"verified\":";
    s += sol.ray.verified ? "true" : "false";
    s += "}";
  }
  s += ",\"pencil\":" + pencil_json(iv);
  s += ",\"sdc\":" + sdc_json(sdc);
  if (oracle && oracle->ran) {
    s += ",\"oracle\":{\"best_value\":" + format_double(oracle->rep.best_value);
    s += ",\"feasible_count\":" + std::to_string(oracle->rep.feasible_count);
    s += ",\"agrees\":";
    s += oracle->agrees ? "true" : "false";
    s += "}";
  }
  s += ",\"timings\":" + timings_json(t);
  return s + "}";
}

namespace {

std::string pencil_text(const PencilInterval& iv) {
  switch (iv.kind) {
    case PencilInterval::Kind::Empty: return "empty";
    case PencilInterval::Kind::Singleton: return "singleton {" + std::to_string(iv.sigma) + "}";
    case PencilInterval::Kind::Interval: {
      std::ostringstream os;
      os << "interval [" << iv.lo << ", " << iv.hi << "]";
      return os.str();
    }
  }
  return "?";
}

}  // namespace

std::string solve_report_text(const Solution& sol, const PencilInterval& iv,
                              const SdcResult& sdc, const ReportTimings& t,
                              const OracleCheck* oracle) {
  std::ostringstream os;
  os.precision(12);
  os << "status: " << status_name(sol.status) << "  (case " << sol.case_label << ")\n";
  if (sol.status == Solution::Status::Attained) {
    os << "value:  " << sol.value << "\n";
    os << "x*:     " << sol.x_star.transpose() << "\n";
    os << "sigma*: " << sol.sigma_star << "\n";
    os << "certificate: feas=" << sol.cert.feas_resid << " stat=" << sol.cert.stat_resid
       << " comp=" << sol.cert.comp_resid << " min_eig=" << sol.cert.pencil_min_eig
       << (sol.cert.passes() ? "  (pass)" : "  (FAIL)") << "\n";
  } else if (sol.status == Solution::Status::Unattained) {
    os << "infimum: " << sol.infimum << "  (not attained)\n";
    os << "sigma*:  " << sol.sigma_star << "\n";
  } else if (sol.status == Solution::Status::UnboundedBelow) {
    os << "ray: base " << sol.ray.base.transpose() << ", dir " << sol.ray.dir.transpose()
       << (sol.ray.verified ? "  (verified)" : "  (unverified)") << "\n";
  }
  os << "pencil: " << pencil_text(iv) << "\n";
  os << "sdc:    " << sdc_status_name(sdc.status);
  if (sdc.status == SdcResult::Status::Sdc) os << "  (cond C " << sdc.cond_C << ")";
  os << "\n";
  if (oracle && oracle->ran) {
    os << "oracle: best " << oracle->rep.best_value << " over "
       << oracle->rep.feasible_count << " feasible points"
       << (oracle->agrees ? "  (agrees)" : "  (DISAGREES)") << "\n";
  }
  os << "time:   " << t.total_ms << " ms\n";
  return os.str();
}

std::string pencil_report_json(const PencilInterval& iv, const SdcResult& sdc,
                               const ReportTimings& t) {
  return "{\"pencil\":" + pencil_json(iv) + ",\"sdc\":" + sdc_json(sdc) +
         ",\"timings\":" + timings_json(t) + "}";
}

std::string pencil_report_text(const PencilInterval& iv, const SdcResult& sdc,
                               const ReportTimings& t) {
  std::ostringstream os;
  os.precision(12);
  os << "pencil: " << pencil_text(iv) << "\n";
  os << "sdc:    " << sdc_status_name(sdc.status);
  if (sdc.status == SdcResult::Status::Sdc) os << "  (cond C " << sdc.cond_C << ")";
  os << "\ntime:   " << t.total_ms << " ms\n";
  return os.str();
}

}  // namespace qp1qc
