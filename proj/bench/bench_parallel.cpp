// Times the threaded Monte-Carlo drivers against their serial fold and
// verifies both produce identical bits. Trials and estimator shards are the
// unit of parallelism; everything inside a trial is sequential by nature.
#include <chrono>
#include <cstdio>
#include <memory>
#include <string>

#include "splinaf/anc.hpp"
#include "splinaf/sysid.hpp"
#include "splinaf/theory.hpp"

using namespace splinaf;

namespace {

template <typename F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int report(const char* label, double serial_ms, double parallel_ms,
           bool identical) {
  std::printf("%-24s serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
              label, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "bit-identical" : "MISMATCH");
  return identical ? 0 : 1;
}

}  // namespace

int main() {
  int bad = 0;

  {
    NsiConfig cfg;
    cfg.criterion = std::make_shared<Gmbz>(GmbzParams{2.0, 0.09, 0.1});
    cfg.mu_w = 0.08;
    cfg.mu_z = 0.9;
    cfg.noise = NoiseSpec::gaussian(1.0);
    cfg.n_iters = 20000;
    cfg.n_trials = 16;
    cfg.parallel = false;
    MseTrace serial_out, parallel_out;
    double ts = time_ms([&] { serial_out = run_nsi(cfg); });
    cfg.parallel = true;
    cfg.threads = 0;
    double tp = time_ms([&] { parallel_out = run_nsi(cfg); });
    bool same = serial_out.mse_db == parallel_out.mse_db &&
                serial_out.w_final == parallel_out.w_final &&
                serial_out.z_final == parallel_out.z_final &&
                serial_out.final_emse == parallel_out.final_emse;
    bad += report("identification trials", ts, tp, same);
  }

  {
    AncConfig cfg;
    cfg.criterion = std::make_shared<Gmbz>(GmbzParams{2.0, 6.0, 0.1});
    cfg.mu_w = 0.1;
    cfg.mu_z = 1e-5;
    cfg.source = NoiseSpec::alpha_stable(2.0, 0.0, 1.0, 0.0);
    cfg.n_iters = 15000;
    cfg.n_trials = 16;
    cfg.parallel = false;
    AnrTrace serial_out, parallel_out;
    double ts = time_ms([&] { serial_out = run_anc(cfg); });
    cfg.parallel = true;
    double tp = time_ms([&] { parallel_out = run_anc(cfg); });
    bool same = serial_out.anr_db == parallel_out.anr_db &&
                serial_out.final_anr_db == parallel_out.final_anr_db &&
                serial_out.max_abs_w == parallel_out.max_abs_w;
    bad += report("control trials", ts, tp, same);
  }

  {
    Gmbz crit(GmbzParams{2.0, 6.0, 0.1});
    NoiseSpec src = NoiseSpec::alpha_stable(1.5, 0.0, 1.0, 0.0);
    NoiseMoments serial_out{}, parallel_out{};
    double ts = time_ms(
        [&] { serial_out = noise_moments_mc(crit, src, 4000000, 9, 0, false); });
    double tp = time_ms(
        [&] { parallel_out = noise_moments_mc(crit, src, 4000000, 9, 0, true); });
    bool same = serial_out.ef2 == parallel_out.ef2 &&
                serial_out.efp == parallel_out.efp &&
                serial_out.ecurv == parallel_out.ecurv;
    bad += report("moment shards", ts, tp, same);
  }

  if (bad != 0) std::printf("%d benchmark(s) found mismatching outputs\n", bad);
  return bad == 0 ? 0 : 1;
}
