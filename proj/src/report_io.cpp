#include "corrmat/report_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace corrmat {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  for (const char* k : required) {
    if (!j.contains(k)) throw std::invalid_argument(std::string("missing key \"") + k + "\"");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known |= (it.key() == k);
    for (const char* k : optional) known |= (it.key() == k);
    if (!known) throw std::invalid_argument("unknown key \"" + it.key() + "\"");
  }
}

LagMap lagmap_from_coeffs(const json& coeffs) {
  if (!coeffs.is_array()) throw std::invalid_argument("\"coeffs\" must be an array");
  LagMap m;
  for (const auto& entry : coeffs) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument("each coeff must be [s, t, value]");
    Lag lag{entry[0].get<int>(), entry[1].get<int>()};
    if (m.count(lag)) throw std::invalid_argument("duplicate lag in coeffs");
    m[lag] = entry[2].get<double>();
  }
  return m;
}

json lagmap_to_coeffs(const LagMap& m) {
  json coeffs = json::array();
  for (const auto& [lag, val] : m) coeffs.push_back(json::array({lag.u, lag.v, val}));
  return coeffs;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json verdict_to_json(const Verdict& v) {
  return json{{"name", v.name},     {"observed", v.observed}, {"expected", v.expected},
              {"tol", v.tol},       {"pass", v.pass},         {"skipped", v.skipped},
              {"note", v.note}};
}

}  // namespace

KernelInput kernel_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("kernel spec must be an object");
  std::string type = j.value("type", "");
  KernelInput out;
  if (type == "wigner") {
    require_keys(j, {"type", "eta2"}, {});
    double eta2 = j["eta2"].get<double>();
    if (!(eta2 > 0.0)) throw std::invalid_argument("eta2 must be > 0");
    out.kernel = kernel_explicit({{Lag{0, 0}, eta2 / 2.0}});
  } else if (type == "ma") {
    require_keys(j, {"type", "coeffs"}, {});
    MAFilter f;
    f.coeffs = lagmap_from_coeffs(j["coeffs"]);
    out.kernel = kernel_from_ma(f);
    out.ma = std::move(f);
  } else if (type == "explicit") {
    require_keys(j, {"type", "coeffs"}, {});
    out.kernel = kernel_explicit(lagmap_from_coeffs(j["coeffs"]));
  } else {
    throw std::invalid_argument("kernel \"type\" must be \"ma\", \"explicit\" or \"wigner\"");
  }
  return out;
}

json kernel_to_json(const Kernel& kernel, const std::optional<MAFilter>& ma) {
  if (ma) return json{{"type", "ma"}, {"coeffs", lagmap_to_coeffs(ma->coeffs)}};
  return json{{"type", "explicit"}, {"coeffs", lagmap_to_coeffs(kernel.values)}};
}

RunConfig config_from_json(const json& j) {
  require_keys(j, {"theta", "kernel", "sizes", "replications", "seed"},
               {"sampler", "eig_tol", "level"});
  RunConfig c;
  c.params.theta = j["theta"].get<double>();
  KernelInput k = kernel_from_json(j["kernel"]);
  c.params.kernel = std::move(k.kernel);
  c.params.ma = std::move(k.ma);
  c.sizes = j["sizes"].get<std::vector<int>>();
  c.replications = j["replications"].get<int>();
  c.master_seed = j["seed"].get<std::uint64_t>();
  std::string sampler = j.value("sampler", c.params.ma ? "ma" : "circulant");
  if (sampler == "ma")
    c.sampler = SamplerKind::ma;
  else if (sampler == "cholesky")
    c.sampler = SamplerKind::cholesky;
  else if (sampler == "circulant")
    c.sampler = SamplerKind::circulant;
  else
    throw std::invalid_argument("sampler must be \"ma\", \"cholesky\" or \"circulant\"");
  c.eig_tol = j.value("eig_tol", kDefaultEigTol);
  c.level = j.value("level", 0.005);
  validate_config(c);
  return c;
}

json config_to_json(const RunConfig& config) {
  const char* sampler = config.sampler == SamplerKind::ma         ? "ma"
                        : config.sampler == SamplerKind::cholesky ? "cholesky"
                                                                  : "circulant";
  return json{{"theta", config.params.theta},
              {"kernel", kernel_to_json(config.params.kernel, config.params.ma)},
              {"sizes", config.sizes},
              {"replications", config.replications},
              {"seed", config.master_seed},
              {"sampler", sampler},
              {"eig_tol", config.eig_tol},
              {"level", config.level}};
}

json predictions_to_json(const Predictions& p) {
  return json{{"center", p.center},
              {"alpha", p.alpha},
              {"sigma2", p.sigma2},
              {"degenerate", p.degenerate}};
}

json validity_to_json(const ValidityReport& r) {
  return json{{"embed_size", r.embed_size},
              {"min_spectral", r.min_spectral},
              {"tol", r.tol},
              {"valid", r.valid}};
}

json summary_to_json(const RunConfig& config, const SummaryReport& report) {
  json sizes = json::array();
  for (const auto& s : report.sizes) {
    json js{{"n", s.n},
            {"count", s.count},
            {"failures", s.failures},
            {"mean_centered", s.centered_stats.mean},
            {"mean_centered_se", s.centered_stats.mean_se},
            {"var_centered", s.centered_stats.variance},
            {"var_centered_se", s.centered_stats.variance_se},
            {"predicted", predictions_to_json(s.pred)},
            {"exact_var_quad", s.exact_var_quad_val},
            {"empirical_var_quad", s.empirical_var_quad},
            {"exact_mean_w2", s.exact_mean_w2_val},
            {"empirical_mean_w2", s.empirical_mean_w2},
            {"opnorm_scaled_q50", s.opnorm_q50},
            {"opnorm_scaled_q90", s.opnorm_q90},
            {"opnorm_scaled_q99", s.opnorm_q99},
            {"median_abs_remainder", s.median_abs_remainder}};
    if (s.ks) {
      js["ks"] = json{{"statistic", s.ks->statistic},
                      {"p_value", s.ks->p_value},
                      {"sample_size", s.ks->sample_size}};
    }
    json verdicts = json::array();
    for (const auto& v : s.verdicts) verdicts.push_back(verdict_to_json(v));
    js["verdicts"] = std::move(verdicts);
    sizes.push_back(std::move(js));
  }
  json global = json::array();
  for (const auto& v : report.global_verdicts) global.push_back(verdict_to_json(v));
  return json{{"config", config_to_json(config)},
              {"sizes", std::move(sizes)},
              {"global_verdicts", std::move(global)},
              {"total_failures", report.total_failures},
              {"all_pass", report.all_pass}};
}

std::string records_to_csv(const std::vector<RepRecord>& records) {
  std::ostringstream out;
  out << "n,rep_index,seed,lambda1,centered,quad_w,quad_w2,op_norm,term1,term2,"
         "remainder,eig_iterations,failed\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.rep_index << ',' << r.seed << ',' << fmt17(r.lambda1) << ','
        << fmt17(r.centered) << ',' << fmt17(r.quad_w) << ',' << fmt17(r.quad_w2) << ','
        << fmt17(r.op_norm) << ',' << fmt17(r.term1) << ',' << fmt17(r.term2) << ','
        << fmt17(r.remainder) << ',' << r.eig_iterations << ',' << (r.failed ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<RepRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  std::vector<RepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RepRecord r;
    int failed = 0;
    int got = std::sscanf(line.c_str(),
                          "%d,%d,%" SCNu64 ",%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%d,%d", &r.n,
                          &r.rep_index, &r.seed, &r.lambda1, &r.centered, &r.quad_w, &r.quad_w2,
                          &r.op_norm, &r.term1, &r.term2, &r.remainder, &r.eig_iterations,
                          &failed);
    if (got != 13) throw std::invalid_argument("malformed CSV line: " + line);
    r.failed = failed != 0;
    out.push_back(r);
  }
  return out;
}

std::string field_to_text(const FieldSample& sample, std::uint64_t seed) {
  std::ostringstream out;
  out << "# n=" << sample.n << " theta=" << fmt17(sample.theta) << " seed=" << seed << '\n';
  for (int i = 0; i < sample.n; ++i) {
    for (int j = 0; j < sample.n; ++j) {
      if (j) out << ' ';
      out << fmt17(sample.z(i, j));
    }
    out << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace corrmat
