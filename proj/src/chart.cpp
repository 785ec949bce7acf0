#include "lightcone/chart.hpp"

#include <random>
#include <stdexcept>

namespace lightcone {

Chart::Chart(std::vector<std::string> names, std::vector<std::pair<double, double>> box,
             std::uint64_t seed)
    : names_(std::move(names)), box_(std::move(box)), seed_(seed) {
  if (names_.empty() || names_.size() != box_.size())
    throw std::invalid_argument("chart: names and box sizes must match and be nonempty");
  for (const auto& [lo, hi] : box_)
    if (!(lo < hi)) throw std::invalid_argument("chart: empty box interval");
}

std::vector<double> Chart::center() const {
  std::vector<double> c(box_.size());
  for (std::size_t i = 0; i < box_.size(); ++i) c[i] = 0.5 * (box_[i].first + box_[i].second);
  return c;
}

std::vector<std::vector<double>> Chart::samples(int count, std::uint64_t seed_offset) const {
  std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ull + seed_offset));
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::vector<double> p(box_.size());
    for (std::size_t i = 0; i < box_.size(); ++i) {
      double lo = box_[i].first, hi = box_[i].second;
      double margin = 0.05 * (hi - lo);  // keeps samples off boundary singularities
      std::uniform_real_distribution<double> dist(lo + margin, hi - margin);
      p[i] = dist(rng);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

ChartPtr make_chart(std::vector<std::string> names,
                    std::vector<std::pair<double, double>> box, std::uint64_t seed) {
  return std::make_shared<const Chart>(std::move(names), std::move(box), seed);
}

}  // namespace lightcone
