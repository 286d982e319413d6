#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "splinaf/adapt.hpp"
#include "splinaf/criteria.hpp"
#include "splinaf/noisegen.hpp"
#include "splinaf/signal.hpp"

namespace splinaf {

// Primary/secondary propagation paths and the primary nonlinearity
// d_n = u_{n-2} + kappa u_{n-2}^2 - delta u_{n-1}^3, u = primary(x).
struct AncPaths {
  FirChannel primary;
  FirChannel secondary;
  double kappa = 0.08;
  double delta = 0.04;

  // Shipped plant: primary taps {0,0,0,1,-0.3,0.2}, secondary {0,0,1,1.5,-1}.
  static AncPaths make_default();
};

// u_past holds past primary-path outputs, most recent first: u_past[0] is
// u_{n-1}, u_past[1] is u_{n-2} (push u_n after calling).
double primary_disturbance(const AncPaths& paths, const DelayLine& u_past);

// Per-tap copies of the secondary path filtering the gradient regressor and
// the u power vector, as the filtered update law requires.
class FcState {
 public:
  FcState(std::size_t n_taps, const std::vector<double>& secondary_taps);

  // Feeds this step's regressor entries; call once per iteration after
  // forward() and before fc_update().
  void advance(const StepRecord& rec, const SafModel& m);

  const std::vector<double>& xf() const { return xf_; }
  const std::array<double, 4>& uf() const { return uf_; }

 private:
  std::vector<FirChannel> x_filters_;
  std::vector<FirChannel> u_filters_;
  std::vector<double> xf_;
  std::array<double, 4> uf_{};
};

// Filtered-reference update: like update_gmbz but with the secondary-filtered
// regressors in place of the instantaneous ones. The residual e is measured
// at the error sensor, not derived from rec.y.
void fc_update(SafModel& m, const StepRecord& rec, const FcState& fc, double e,
               StepSizes steps, const Criterion& crit);

// Exponentially smoothed amplitude ratio of residual to disturbance.
struct AnrState {
  double chi = 0.999;
  double a_e = 0.0;
  double a_d = 0.0;
};

// Returns 20 log10(a_e / a_d) after absorbing this step's |e|, |d|;
// -infinity while the disturbance average is still zero.
double anr_step(AnrState& st, double e, double d);

struct AncConfig {
  std::shared_ptr<const Criterion> criterion;
  double mu_w = 0.1;  // raw steps; eta = mu * criterion->step_fold()
  double mu_z = 0.00001;
  NoiseSpec source = NoiseSpec::alpha_stable(2.0, 0.0, 1.0, 0.0);
  double source_scale = 0.1;  // amplitude applied to the raw source stream
  double snr_db = 30.0;       // measurement noise at the error sensor
  std::size_t n_iters = 60000;
  std::size_t n_trials = 100;
  std::uint64_t seed = 42;
  std::size_t n_taps = 8;
  std::size_t q = 200001;  // controller table; wide to keep the span inside
  double dx = 1.0;
  double chi = 0.999;
  int threads = 0;
  bool parallel = true;
  bool record_waveforms = false;  // keep trial 0 reference/residual streams
};

struct AnrTrace {
  std::vector<double> anr_db;  // per-iteration, averaged over surviving trials
  double final_anr_db = 0.0;   // mean of the trailing 10% window
  double max_abs_w = 0.0;      // across surviving trials and iterations
  std::size_t diverged = 0;
  std::size_t trials = 0;
  std::vector<double> ref_waveform;       // trial 0, when recorded
  std::vector<double> residual_waveform;  // trial 0, when recorded
};

// Active-control run: controller adapts from zero weights and an identity
// table, fed the raw source stream, updated through the filtered path.
// Measurement noise is added to the disturbance at snr_db against its
// empirical power. Divergence handling matches run_nsi.
AnrTrace run_anc(const AncConfig& cfg);

}  // namespace splinaf
