#ifndef CORRMAT_REPORT_IO_HPP
#define CORRMAT_REPORT_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "corrmat/montecarlo.hpp"

namespace corrmat {

using json = nlohmann::json;

// Kernel/filter schema:
//   {"type": "ma" | "explicit", "coeffs": [[s, t, value], ...]}
//   {"type": "wigner", "eta2": real}
struct KernelInput {
  Kernel kernel;
  std::optional<MAFilter> ma;
};

KernelInput kernel_from_json(const json& j);
json kernel_to_json(const Kernel& kernel, const std::optional<MAFilter>& ma);

// Run config schema (strict, unknown keys rejected):
//   {"theta", "kernel", "sizes", "replications", "seed",
//    "sampler"?, "eig_tol"?, "level"?}
RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& config);

json predictions_to_json(const Predictions& p);
json validity_to_json(const ValidityReport& r);
json summary_to_json(const RunConfig& config, const SummaryReport& report);

// CSV columns, exact order:
// n,rep_index,seed,lambda1,centered,quad_w,quad_w2,op_norm,term1,term2,
// remainder,eig_iterations,failed — floats with 17 significant digits.
std::string records_to_csv(const std::vector<RepRecord>& records);
std::vector<RepRecord> records_from_csv(const std::string& text);

// "# n=<n> theta=<theta> seed=<seed>" header, one row per line.
std::string field_to_text(const FieldSample& sample, std::uint64_t seed);

// temp-file + rename; never leaves a partial file at the final path
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace corrmat

#endif
