#include "tnormlab/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tnormlab {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

Report make_report(std::string check_name, double max_residual, double tolerance,
                   std::optional<Witness> witness) {
  Report r;
  r.check_name = std::move(check_name);
  r.max_residual = max_residual;
  r.passed = max_residual <= tolerance;
  if (r.passed) {
    r.witness.reset();
  } else {
    if (!witness) throw std::logic_error("failed check '" + r.check_name + "' without witness");
    r.witness = witness;
  }
  r.metadata["tolerance"] = format_number(tolerance);
  return r;
}

namespace {

nlohmann::ordered_json number(double v) {
  // JSON has no NaN/inf; failures never produce them but keep output valid.
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string to_json(const Report& report, int indent) {
  nlohmann::ordered_json j;
  j["check"] = report.check_name;
  j["passed"] = report.passed;
  j["max_residual"] = number(report.max_residual);
  if (report.witness) {
    const Witness& w = *report.witness;
    j["witness"] = {{"lambda", number(w.lambda)}, {"x", number(w.x)},     {"y", number(w.y)},
                    {"lhs", number(w.lhs)},       {"rhs", number(w.rhs)}, {"gap", number(w.gap)}};
  } else {
    j["witness"] = nullptr;
  }
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  return j.dump(indent);
}

std::string summary(const Report& report) {
  std::ostringstream os;
  os << report.check_name << (report.passed ? " PASS" : " FAIL")
     << " max_residual=" << format_number(report.max_residual);
  if (report.witness) {
    const Witness& w = *report.witness;
    os << " witness(lambda=" << format_number(w.lambda) << " x=" << format_number(w.x)
       << " y=" << format_number(w.y) << " lhs=" << format_number(w.lhs)
       << " rhs=" << format_number(w.rhs) << " gap=" << format_number(w.gap) << ")";
  }
  if (auto it = report.metadata.find("witness_desc"); it != report.metadata.end()) {
    os << " [" << it->second << "]";
  }
  return os.str();
}

}  // namespace tnormlab
