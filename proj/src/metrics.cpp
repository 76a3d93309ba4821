#include "mailcat/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mailcat {

CurveReport compute_roc_pr_auc(const std::vector<ScoredExample>& scores) {
  std::size_t pos = 0, neg = 0;
  for (const auto& s : scores) (s.truth ? pos : neg)++;
  if (pos == 0 || neg == 0)
    throw std::invalid_argument(
        "compute_roc_pr_auc: both classes must be present");

  std::vector<ScoredExample> sorted = scores;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredExample& a, const ScoredExample& b) {
              return a.score > b.score;
            });

  CurveReport report;
  report.roc.push_back({0.0, 0.0, sorted.front().score + 1.0});

  std::size_t tp = 0, fp = 0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double threshold = sorted[i].score;
    // consume the whole tie group
    while (i < sorted.size() && sorted[i].score == threshold) {
      (sorted[i].truth ? tp : fp)++;
      ++i;
    }
    const double tpr = static_cast<double>(tp) / static_cast<double>(pos);
    const double fpr = static_cast<double>(fp) / static_cast<double>(neg);
    report.roc.push_back({fpr, tpr, threshold});
    report.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;

    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    report.pr.push_back({tpr, precision, threshold});
  }
  return report;
}

std::vector<RocPoint> average_roc_curves(
    const std::vector<std::vector<RocPoint>>& curves, int grid_points) {
  if (curves.empty() || grid_points < 2)
    throw std::invalid_argument("average_roc_curves: bad input");

  // TPR at a grid FPR is the highest TPR whose FPR does not exceed it
  // (step interpolation of the staircase).
  auto tpr_at = [](const std::vector<RocPoint>& curve, double fpr) {
    double best = 0.0;
    for (const auto& p : curve)
      if (p.fpr <= fpr + 1e-12) best = std::max(best, p.tpr);
    return best;
  };

  std::vector<RocPoint> out;
  out.reserve(static_cast<std::size_t>(grid_points));
  for (int g = 0; g < grid_points; ++g) {
    const double fpr =
        static_cast<double>(g) / static_cast<double>(grid_points - 1);
    double tpr = 0.0;
    for (const auto& c : curves) tpr += tpr_at(c, fpr);
    out.push_back({fpr, tpr / static_cast<double>(curves.size()), 0.0});
  }
  return out;
}

void write_curve_svg(const std::string& path,
                     const std::vector<std::pair<double, double>>& points,
                     const std::string& title) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  const int size = 520, margin = 40, plot = size - 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
      << "\" height=\"" << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << size / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << title << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot
      << "\" height=\"" << plot << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
         "points=\"";
  for (const auto& [x, y] : points) {
    const double px = margin + x * plot;
    const double py = size - margin - y * plot;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px, py);
    out << buf;
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace mailcat
