#include "lightcone/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace lightcone {

using ordered_json = nlohmann::ordered_json;

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Report::Report(std::string title, RunConfig config)
    : title_(std::move(title)), config_(config) {}

void Report::add(CheckRecord rec) { records_.push_back(std::move(rec)); }

CheckRecord& Report::check(const std::string& name, const std::string& anchor, double residual,
                           double tolerance, int samples, std::string notes) {
  CheckRecord rec;
  rec.name = name;
  rec.anchor = anchor;
  rec.samples = samples;
  rec.max_residual = residual;
  rec.tolerance = tolerance;
  rec.passed = residual < tolerance;
  rec.notes = std::move(notes);
  records_.push_back(std::move(rec));
  return records_.back();
}

bool Report::all_passed() const {
  for (const auto& r : records_)
    if (!r.passed) return false;
  return true;
}

void Report::merge(const Report& other) {
  for (const auto& r : other.records_) records_.push_back(r);
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << title_ << " ==\n";
  os << "config: samples=" << config_.samples << " tol=" << config_.tol
     << " seed=" << config_.seed << " fd_fallback=" << (config_.fd_fallback ? "on" : "off")
     << " node_budget=" << config_.node_budget << "\n";
  for (const auto& r : records_) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  residual=" << r.max_residual
       << " tol=" << r.tolerance << " samples=" << r.samples << "  (" << r.anchor << ")";
    if (!r.notes.empty()) os << "  -- " << r.notes;
    os << "\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  ordered_json j;
  j["title"] = title_;
  j["config"] = {{"samples", config_.samples},
                 {"tol", config_.tol},
                 {"seed", config_.seed},
                 {"fd_fallback", config_.fd_fallback},
                 {"node_budget", config_.node_budget},
                 {"fd_tol", config_.fd_tol}};
  ordered_json recs = ordered_json::array();
  for (const auto& r : records_) {
    ordered_json jr;
    jr["name"] = r.name;
    jr["anchor"] = r.anchor;
    jr["samples"] = r.samples;
    jr["max_residual"] = r.max_residual;
    jr["tolerance"] = r.tolerance;
    jr["passed"] = r.passed;
    jr["notes"] = r.notes;
    recs.push_back(std::move(jr));
  }
  j["checks"] = std::move(recs);
  j["all_passed"] = all_passed();
  return j.dump(2);
}

}  // namespace lightcone
