#ifndef ECIBO_STATS_HPP
#define ECIBO_STATS_HPP

#include <map>
#include <string>
#include <vector>

#include "ecibo/bo.hpp"

namespace ecibo {

enum class Verdict { better, worse, similar };

std::string to_string(Verdict v);

/// Two-sided Wilcoxon signed-rank test of paired samples.
struct TestResult {
  double w = 0.0;  // min(W+, W-)
  double p = 1.0;
  Verdict verdict = Verdict::similar;
};

/// Zero differences are dropped; |differences| are ranked with mid-rank ties;
/// W = min(W+, W-). The p value is exact (full sign-assignment distribution)
/// for effective m <= 12 and a tie- and continuity-corrected normal
/// approximation above that. All differences zero gives {w=0, p=1, similar}.
/// verdict `better` means a is significantly lower than b at level alpha
/// (minimization), judged by the median of the nonzero differences.
/// Throws std::invalid_argument for empty or length-mismatched input.
TestResult wilcoxon_signed_rank(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double alpha = 0.05);

struct FinalStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single run
  double min = 0.0;
  double max = 0.0;
};

struct AlgorithmSummary {
  int runs = 0;
  FinalStats final_best;
  std::vector<double> final_bests;     // per run, in run order
  std::vector<double> mean_curve;      // evaluation-aligned mean best-so-far
};

using SummaryStats = std::map<std::string, AlgorithmSummary>;

/// Groups records by algorithm and reduces them to the summary statistics.
/// All records must share n_max. Throws std::invalid_argument on empty input
/// or mismatched budgets. Failed (partial) records are skipped.
SummaryStats summarize(const std::vector<RunRecord>& records);

}  // namespace ecibo

#endif
