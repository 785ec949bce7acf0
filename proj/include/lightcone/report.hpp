#ifndef LIGHTCONE_REPORT_HPP
#define LIGHTCONE_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lightcone {

/// One quantitative check: an identity or gate evaluated at sample points.
/// `anchor` names the identity being tested (or "plumbing" for utility
/// checks) so reports stay self-describing.
struct CheckRecord {
  std::string name;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string notes;
};

struct RunConfig {
  int samples = 20;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  bool fd_fallback = true;
  std::int64_t node_budget = 2'000'000;

  // looser tolerance used when a check had to fall back to finite
  // differences because a symbolic computation exceeded the node budget
  double fd_tol = 1e-5;

  // extra vector fields with random polynomial coefficients mixed into the
  // direction pools of the curvature checks (0 = coordinate fields only)
  int random_fields = 0;
};

/// Short scientific formatting for residuals quoted inside notes.
std::string format_sci(double v);

class Report {
 public:
  explicit Report(std::string title, RunConfig config = {});

  void add(CheckRecord rec);
  CheckRecord& check(const std::string& name, const std::string& anchor, double residual,
                     double tolerance, int samples, std::string notes = "");

  const std::vector<CheckRecord>& records() const { return records_; }
  const std::string& title() const { return title_; }
  const RunConfig& config() const { return config_; }

  bool all_passed() const;
  void merge(const Report& other);

  std::string to_text() const;
  std::string to_json() const;  // stable key ordering

 private:
  std::string title_;
  RunConfig config_;
  std::vector<CheckRecord> records_;
};

}  // namespace lightcone

#endif
