#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "corrmat/report_io.hpp"

namespace {

using corrmat::json;

constexpr int kExitParse = 2;
constexpr int kExitTheta = 3;
constexpr int kExitInvalidKernel = 4;
constexpr int kExitVerdictFail = 5;
constexpr int kExitSolverBudget = 6;

void apply_thread_override() {
#ifdef _OPENMP
  if (const char* env = std::getenv("CORRMAT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }
#endif
}

corrmat::KernelInput load_kernel(const std::string& path) {
  return corrmat::kernel_from_json(json::parse(corrmat::read_file(path)));
}

int cmd_predict(const std::string& kernel_file, double theta, int n) {
  corrmat::KernelInput k;
  try {
    k = load_kernel(kernel_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (theta <= 0.0) {
    std::cerr << "error: theta must be > 0\n";
    return kExitTheta;
  }
  json out = corrmat::predictions_to_json(corrmat::predict(k.kernel, theta, n));
  out["exact_var_quad"] = corrmat::exact_var_quad(k.kernel, n);
  out["exact_mean_w2"] = corrmat::exact_mean_w2(k.kernel, n);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_validate(const std::string& kernel_file, int embed_size) {
  corrmat::KernelInput k;
  try {
    k = load_kernel(kernel_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  int m = embed_size;
  if (m == 0) {
    m = 2;
    while (m < 2 * k.kernel.radius() + 2) m <<= 1;
    m = std::max(m, 16);
  }
  corrmat::ValidityReport rep = corrmat::validate_kernel(k.kernel, m);
  std::cout << corrmat::validity_to_json(rep).dump(2) << "\n";
  return rep.valid ? 0 : kExitInvalidKernel;
}

int cmd_sample(const std::string& kernel_file, double theta, int n, std::uint64_t seed,
               const std::string& sampler, const std::string& out_path) {
  corrmat::FieldParams params;
  try {
    corrmat::KernelInput k = load_kernel(kernel_file);
    params.kernel = std::move(k.kernel);
    params.ma = std::move(k.ma);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (theta <= 0.0) {
    std::cerr << "error: theta must be > 0\n";
    return kExitTheta;
  }
  params.theta = theta;
  corrmat::SamplerKind kind;
  if (sampler == "ma")
    kind = corrmat::SamplerKind::ma;
  else if (sampler == "cholesky")
    kind = corrmat::SamplerKind::cholesky;
  else if (sampler == "circulant")
    kind = corrmat::SamplerKind::circulant;
  else {
    std::cerr << "error: unknown sampler \"" << sampler << "\"\n";
    return kExitParse;
  }
  corrmat::RngStream stream{seed, static_cast<std::uint64_t>(n), 0};
  corrmat::FieldSample field = corrmat::draw_field(kind, params, n, stream);
  std::string text = corrmat::field_to_text(field, seed);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    corrmat::write_file_atomic(out_path, text);
  }
  return 0;
}

void write_outputs(const corrmat::RunConfig& config, const corrmat::ExperimentResult& result,
                   const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  corrmat::write_file_atomic((fs::path(out_dir) / "records.csv").string(),
                             corrmat::records_to_csv(result.records));
  corrmat::write_file_atomic((fs::path(out_dir) / "summary.json").string(),
                             corrmat::summary_to_json(config, result.summary).dump(2) + "\n");

  // Q-Q pairs of the centered statistic, per non-degenerate size
  std::ostringstream qq;
  qq << "n,theoretical,empirical\n";
  for (const auto& s : result.summary.sizes) {
    if (s.pred.degenerate || s.count < 2) continue;
    std::vector<double> centered;
    for (const auto& r : result.records)
      if (r.n == s.n && !r.failed) centered.push_back(r.centered);
    for (const auto& [q, e] : corrmat::qq_points(centered, s.pred.alpha, s.pred.sigma2)) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", s.n, q, e);
      qq << buf;
    }
  }
  corrmat::write_file_atomic((fs::path(out_dir) / "qq.csv").string(), qq.str());
}

int cmd_run(const std::string& config_file, const std::string& out_dir) {
  corrmat::RunConfig config;
  try {
    config = corrmat::config_from_json(json::parse(corrmat::read_file(config_file)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  corrmat::ExperimentResult result;
  try {
    result = corrmat::run_experiment(config);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverBudget;
  }
  write_outputs(config, result, out_dir);
  for (const auto& s : result.summary.sizes) {
    for (const auto& v : s.verdicts) {
      std::cout << "n=" << s.n << " " << v.name << ": "
                << (v.skipped ? "SKIP" : v.pass ? "PASS" : "FAIL") << "\n";
    }
  }
  for (const auto& v : result.summary.global_verdicts) {
    std::cout << v.name << ": " << (v.skipped ? "SKIP" : v.pass ? "PASS" : "FAIL") << "\n";
  }
  return result.summary.all_pass ? 0 : kExitVerdictFail;
}

int cmd_report(const std::string& config_file, const std::string& csv_file,
               const std::string& out_path) {
  corrmat::RunConfig config;
  std::vector<corrmat::RepRecord> records;
  try {
    config = corrmat::config_from_json(json::parse(corrmat::read_file(config_file)));
    records = corrmat::records_from_csv(corrmat::read_file(csv_file));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  corrmat::SummaryReport summary = corrmat::build_summary(config, records);
  std::string text = corrmat::summary_to_json(config, summary).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    corrmat::write_file_atomic(out_path, text);
  }
  return summary.all_pass ? 0 : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_override();
  CLI::App app{"Monte Carlo laboratory for the largest eigenvalue of correlated "
               "positive-mean Gaussian matrices"};
  app.require_subcommand(1);

  std::string kernel_file, config_file, csv_file, out_path, sampler = "ma";
  double theta = 1.0;
  int n = 100, embed_size = 0;
  std::uint64_t seed = 0;

  auto* predict = app.add_subcommand("predict", "closed-form predictions for a kernel");
  predict->add_option("--kernel", kernel_file, "kernel JSON file")->required();
  predict->add_option("--theta", theta, "field mean (> 0)")->required();
  predict->add_option("--n", n, "matrix size")->required();

  auto* validate = app.add_subcommand("validate-kernel", "check circulant embeddability");
  validate->add_option("--kernel", kernel_file, "kernel JSON file")->required();
  validate->add_option("--embed", embed_size, "embedding size (power of two; 0 = auto)");

  auto* sample = app.add_subcommand("sample", "dump one field realization");
  sample->add_option("--kernel", kernel_file, "kernel JSON file")->required();
  sample->add_option("--theta", theta, "field mean (> 0)")->required();
  sample->add_option("--n", n, "grid size")->required();
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--sampler", sampler, "ma | cholesky | circulant");
  sample->add_option("--out", out_path, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
  run->add_option("--config", config_file, "run config JSON")->required();
  run->add_option("--out", out_path, "output directory")->required();

  auto* report = app.add_subcommand("report", "recompute a summary from an existing CSV");
  report->add_option("--config", config_file, "run config JSON")->required();
  report->add_option("--csv", csv_file, "records CSV")->required();
  report->add_option("--out", out_path, "summary output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (predict->parsed()) return cmd_predict(kernel_file, theta, n);
    if (validate->parsed()) return cmd_validate(kernel_file, embed_size);
    if (sample->parsed()) return cmd_sample(kernel_file, theta, n, seed, sampler, out_path);
    if (run->parsed()) return cmd_run(config_file, out_path);
    if (report->parsed()) return cmd_report(config_file, csv_file, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
