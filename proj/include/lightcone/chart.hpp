#ifndef LIGHTCONE_CHART_HPP
#define LIGHTCONE_CHART_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lightcone {

/// A single coordinate chart: names, a closed domain box per coordinate and
/// a seed for deterministic sampling. All geometry in this library is
/// chart-local; charts are immutable and shared by pointer.
class Chart {
 public:
  Chart(std::vector<std::string> names, std::vector<std::pair<double, double>> box,
        std::uint64_t seed);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<double, double>>& box() const { return box_; }
  std::uint64_t seed() const { return seed_; }

  /// Box midpoint; used for deterministic pivoting decisions.
  std::vector<double> center() const;

  /// `count` points drawn uniformly from the box shrunk by 5% per side,
  /// deterministically from the chart seed (optionally offset).
  std::vector<std::vector<double>> samples(int count, std::uint64_t seed_offset = 0) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<double, double>> box_;
  std::uint64_t seed_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names,
                    std::vector<std::pair<double, double>> box, std::uint64_t seed);

}  // namespace lightcone

#endif
