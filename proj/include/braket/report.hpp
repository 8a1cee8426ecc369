#ifndef BRAKET_REPORT_HPP
#define BRAKET_REPORT_HPP

#include <cstdio>
#include <string>
#include <utility>

namespace braket {

enum class CheckStatus { Pass, Fail, Error };

inline const char *to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "error";
}

// Outcome of one named check. `status` is pass exactly when
// residual <= tolerance; an error outcome carries no residual.
struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::Error;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;

  static CheckReport from_residual(std::string name, double residual, double tolerance,
                                   std::string detail = "") {
    CheckReport r;
    r.name = std::move(name);
    r.status = residual <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    r.residual = residual;
    r.tolerance = tolerance;
    r.detail = std::move(detail);
    return r;
  }

  static CheckReport error(std::string name, double tolerance, std::string detail) {
    CheckReport r;
    r.name = std::move(name);
    r.status = CheckStatus::Error;
    r.tolerance = tolerance;
    r.detail = std::move(detail);
    return r;
  }

  bool passed() const { return status == CheckStatus::Pass; }
};

namespace detail {

// 17 significant digits: enough to round-trip any double, and fixed so
// reports are byte-stable for golden-file comparison.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string json_escape(const std::string &s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

} // namespace detail

// One JSON object per line, fixed key order.
inline std::string to_json_line(const CheckReport &r) {
  std::string out = "{\"name\":\"" + detail::json_escape(r.name) + "\",\"status\":\"" +
                    to_string(r.status) + "\",\"residual\":";
  out += r.status == CheckStatus::Error ? "null" : detail::format_real(r.residual);
  out += ",\"tolerance\":" + detail::format_real(r.tolerance);
  out += ",\"detail\":\"" + detail::json_escape(r.detail) + "\"}";
  return out;
}

inline std::string to_text_line(const CheckReport &r) {
  std::string out;
  switch (r.status) {
    case CheckStatus::Pass: out = "PASS  "; break;
    case CheckStatus::Fail: out = "FAIL  "; break;
    case CheckStatus::Error: out = "ERROR "; break;
  }
  out += r.name;
  if (r.status != CheckStatus::Error) {
    out += "  residual=" + detail::format_real(r.residual) +
           " tolerance=" + detail::format_real(r.tolerance);
  }
  if (!r.detail.empty()) out += "  (" + r.detail + ")";
  return out;
}

} // namespace braket

#endif
