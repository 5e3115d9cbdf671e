#include "ecibo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "ecibo/acquisition.hpp"

namespace ecibo {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::better: return "better";
    case Verdict::worse: return "worse";
    case Verdict::similar: return "similar";
  }
  throw std::invalid_argument("to_string: unknown Verdict");
}

namespace {

/// Mid-ranks of |diffs| (ties share the average of their rank range).
std::vector<double> midranks(const std::vector<double>& abs_diffs) {
  const std::size_t m = abs_diffs.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return abs_diffs[a] < abs_diffs[b];
  });
  std::vector<double> ranks(m, 0.0);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && abs_diffs[idx[j + 1]] == abs_diffs[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

/// Exact two-sided p: P(min(W+, W-) <= w_obs) over all 2^m equiprobable sign
/// assignments, computed by counting subset rank-sums. Ranks are doubled so
/// mid-ranks become integers.
double exact_p(const std::vector<double>& ranks, double w_obs) {
  const std::size_t m = ranks.size();
  std::vector<long> r2(m);
  long total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    r2[i] = std::lround(2.0 * ranks[i]);
    total += r2[i];
  }
  std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
  count[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (long s = total - r2[i]; s >= 0; --s) {
      if (count[static_cast<std::size_t>(s)] > 0.0) {
        count[static_cast<std::size_t>(s + r2[i])] +=
            count[static_cast<std::size_t>(s)];
      }
    }
  }
  const long w2 = std::lround(2.0 * w_obs);
  double hits = 0.0;
  for (long s = 0; s <= total; ++s) {
    if (std::min(s, total - s) <= w2) hits += count[static_cast<std::size_t>(s)];
  }
  return hits / std::pow(2.0, static_cast<double>(m));
}

/// Normal approximation with mid-rank tie correction and a 0.5 continuity
/// correction, two-sided.
double approx_p(const std::vector<double>& abs_diffs, double w_obs) {
  const double m = static_cast<double>(abs_diffs.size());
  const double mean = m * (m + 1.0) / 4.0;
  double tie_term = 0.0;
  std::vector<double> sorted = abs_diffs;
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const double var = m * (m + 1.0) * (2.0 * m + 1.0) / 24.0 - tie_term / 48.0;
  if (var <= 0.0) return 1.0;
  const double z = (w_obs - mean + 0.5) / std::sqrt(var);
  return std::min(1.0, 2.0 * normal_cdf(z));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

TestResult wilcoxon_signed_rank(const std::vector<double>& a,
                                const std::vector<double>& b, double alpha) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument(
        "wilcoxon_signed_rank: paired samples of equal nonzero length required");
  }
  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    return TestResult{0.0, 1.0, Verdict::similar};
  }

  std::vector<double> abs_diffs(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) abs_diffs[i] = std::abs(diffs[i]);
  const std::vector<double> ranks = midranks(abs_diffs);

  double w_plus = 0.0, w_total = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    w_total += ranks[i];
    if (diffs[i] > 0.0) w_plus += ranks[i];
  }
  const double w = std::min(w_plus, w_total - w_plus);

  const double p =
      diffs.size() <= 12 ? exact_p(ranks, w) : approx_p(abs_diffs, w);

  Verdict verdict = Verdict::similar;
  if (p < alpha) {
    const double med = median_of(diffs);
    if (med < 0.0) verdict = Verdict::better;
    else if (med > 0.0) verdict = Verdict::worse;
  }
  return TestResult{w, p, verdict};
}

SummaryStats summarize(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> usable;
  for (const auto& r : records) {
    if (!r.failed && !r.entries.empty()) usable.push_back(&r);
  }
  if (usable.empty()) {
    throw std::invalid_argument("summarize: no usable records");
  }
  const std::size_t n_max = usable.front()->entries.size();
  for (const auto* r : usable) {
    if (r->entries.size() != n_max) {
      throw std::invalid_argument("summarize: records disagree on n_max");
    }
  }

  SummaryStats stats;
  for (const auto* r : usable) {
    auto& s = stats[r->algorithm];
    s.runs += 1;
    s.final_bests.push_back(r->final_best());
    if (s.mean_curve.empty()) s.mean_curve.assign(n_max, 0.0);
    for (std::size_t e = 0; e < n_max; ++e) {
      s.mean_curve[e] += r->entries[e].best_f;
    }
  }
  for (auto& [name, s] : stats) {
    (void)name;
    const double n = static_cast<double>(s.runs);
    for (auto& v : s.mean_curve) v /= n;
    const auto& fb = s.final_bests;
    s.final_best.mean = std::accumulate(fb.begin(), fb.end(), 0.0) / n;
    s.final_best.median = median_of(fb);
    s.final_best.min = *std::min_element(fb.begin(), fb.end());
    s.final_best.max = *std::max_element(fb.begin(), fb.end());
    double ss = 0.0;
    for (double v : fb) ss += (v - s.final_best.mean) * (v - s.final_best.mean);
    s.final_best.stddev = s.runs > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  return stats;
}

}  // namespace ecibo
