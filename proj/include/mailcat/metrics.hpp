#pragma once

#include <string>
#include <vector>

namespace mailcat {

struct ScoredExample {
  double score;
  bool truth;
};

struct RocPoint {
  double fpr, tpr, threshold;
};

struct PrPoint {
  double recall, precision, threshold;
};

struct CurveReport {
  std::vector<RocPoint> roc;  // monotone in FPR, (0,0) .. (1,1)
  std::vector<PrPoint> pr;
  double auc = 0.0;           // trapezoid over the ROC
};

// Builds ROC and PR curves from sorted unique thresholds with tied scores
// grouped, plus the trapezoid AUC. Throws std::invalid_argument when only
// one class is present.
CurveReport compute_roc_pr_auc(const std::vector<ScoredExample>& scores);

// Vertical (fixed-FPR grid) average of several ROC curves.
std::vector<RocPoint> average_roc_curves(
    const std::vector<std::vector<RocPoint>>& curves, int grid_points = 101);

// Minimal vector-graphic dump of a curve (x/y in [0,1]).
void write_curve_svg(const std::string& path,
                     const std::vector<std::pair<double, double>>& points,
                     const std::string& title);

}  // namespace mailcat
