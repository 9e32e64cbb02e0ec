// Compares the OpenMP kernels against the serial reference implementations:
// symmetric matvec, and the replication loop of a small experiment.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "corrmat/montecarlo.hpp"

using namespace corrmat;
using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 1500;
  int reps = argc > 2 ? std::atoi(argv[2]) : 40;

  MAFilter f{{{Lag{0, 0}, 1.0}, {Lag{1, 0}, 1.0}}};
  FieldParams params{1.0, kernel_from_ma(f), f};

  // matvec: serial reference vs OpenMP
  FieldSample field = sample_ma(params, n, RngStream{1, static_cast<std::uint64_t>(n), 0});
  SymMatrix w = build_w(field);
  std::vector<double> x(n, 1.0), y(n);

  const int iters = 50;
  auto t0 = clock_type::now();
  for (int i = 0; i < iters; ++i) matvec_serial(w, x.data(), y.data());
  double t_serial = seconds_since(t0);

  t0 = clock_type::now();
  for (int i = 0; i < iters; ++i) matvec(w, x.data(), y.data());
  double t_par = seconds_since(t0);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("matvec n=%d, %d iters: serial %.3fs, parallel(%d threads) %.3fs, speedup %.2fx\n",
              n, iters, t_serial, threads, t_par, t_serial / t_par);

  // replication loop: 1 thread vs all threads; outputs must match bitwise
  RunConfig cfg;
  cfg.params = params;
  cfg.sizes = {200};
  cfg.replications = reps;
  cfg.master_seed = 7;
  cfg.sampler = SamplerKind::ma;

#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  t0 = clock_type::now();
  ExperimentResult serial = run_experiment(cfg);
  double t_run_serial = seconds_since(t0);

#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
  t0 = clock_type::now();
  ExperimentResult parallel = run_experiment(cfg);
  double t_run_par = seconds_since(t0);

  bool identical = serial.records.size() == parallel.records.size();
  for (std::size_t i = 0; identical && i < serial.records.size(); ++i) {
    identical = serial.records[i].lambda1 == parallel.records[i].lambda1 &&
                serial.records[i].op_norm == parallel.records[i].op_norm;
  }
  std::printf("experiment n=200 reps=%d: 1 thread %.3fs, %d threads %.3fs, speedup %.2fx, "
              "records identical: %s\n",
              reps, t_run_serial, threads, t_run_par, t_run_serial / t_run_par,
              identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
