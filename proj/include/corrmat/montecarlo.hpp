#ifndef CORRMAT_MONTECARLO_HPP
#define CORRMAT_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrmat/matrix.hpp"
#include "corrmat/sampler.hpp"
#include "corrmat/stats.hpp"
#include "corrmat/theory.hpp"

namespace corrmat {

struct RunConfig {
  FieldParams params;
  std::vector<int> sizes;
  int replications = 0;
  std::uint64_t master_seed = 0;
  SamplerKind sampler = SamplerKind::ma;
  double eig_tol = kDefaultEigTol;
  double level = 0.005;  // significance threshold for the KS verdict
};

// Throws std::invalid_argument when the config violates its invariants.
void validate_config(const RunConfig& config);

struct RepRecord {
  int n = 0;
  int rep_index = 0;
  std::uint64_t seed = 0;
  double lambda1 = 0.0;
  double centered = 0.0;   // lambda1 - 2 n theta
  double quad_w = 0.0;     // 1' W 1
  double quad_w2 = 0.0;    // 1' W^2 1
  double op_norm = 0.0;    // ||W||
  double term1 = 0.0;      // 2 theta lambda1^-1 quad_w
  double term2 = 0.0;      // 2 theta lambda1^-2 quad_w2
  double remainder = 0.0;  // centered - term1 - term2
  int eig_iterations = 0;
  bool failed = false;
};

struct Verdict {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct SizeSummary {
  int n = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
  MomentSummary centered_stats;
  Predictions pred;
  std::optional<KsResult> ks;
  double exact_var_quad_val = 0.0;
  double empirical_var_quad = 0.0;
  double exact_mean_w2_val = 0.0;
  double empirical_mean_w2 = 0.0;
  double opnorm_q50 = 0.0, opnorm_q90 = 0.0, opnorm_q99 = 0.0;  // of ||W||/sqrt(n)
  double median_abs_remainder = 0.0;
  std::vector<Verdict> verdicts;
};

struct SummaryReport {
  std::vector<SizeSummary> sizes;
  std::vector<Verdict> global_verdicts;
  std::size_t total_failures = 0;
  bool all_pass = false;
};

struct ExperimentResult {
  std::vector<RepRecord> records;  // sorted by (n, rep_index)
  SummaryReport summary;
};

// Runs all (size, replication) pairs, in parallel when OpenMP is enabled.
// Output is identical for any worker count. Throws std::runtime_error when
// more than 1% of replications fail to converge.
ExperimentResult run_experiment(const RunConfig& config);

// Recomputes the summary from an existing record stream.
SummaryReport build_summary(const RunConfig& config, const std::vector<RepRecord>& records);

struct OpNormQuantiles {
  int n = 0;
  double q50 = 0.0, q90 = 0.0, q99 = 0.0;
};

// Per-size quantiles of ||W||/sqrt(n).
std::vector<OpNormQuantiles> diagnostics_lemma1(const std::vector<RepRecord>& records);

// nearest-rank upper empirical quantile of a sorted vector
double quantile_sorted(const std::vector<double>& sorted, double level);

}  // namespace corrmat

#endif
