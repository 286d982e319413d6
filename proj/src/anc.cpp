#include "splinaf/anc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splinaf/errors.hpp"
#include "splinaf/parallel.hpp"
#include "splinaf/rng.hpp"

namespace splinaf {

AncPaths AncPaths::make_default() {
  return AncPaths{FirChannel({0.0, 0.0, 0.0, 1.0, -0.3, 0.2}),
                  FirChannel({0.0, 0.0, 1.0, 1.5, -1.0}), 0.08, 0.04};
}

double primary_disturbance(const AncPaths& paths, const DelayLine& u_past) {
  if (u_past.size() < 2)
    throw std::invalid_argument("need at least two past path outputs");
  double u1 = u_past[0];  // u_{n-1}
  double u2 = u_past[1];  // u_{n-2}
  return u2 + paths.kappa * u2 * u2 - paths.delta * u1 * u1 * u1;
}

FcState::FcState(std::size_t n_taps, const std::vector<double>& secondary_taps)
    : xf_(n_taps, 0.0) {
  if (n_taps == 0) throw std::invalid_argument("need at least one tap");
  x_filters_.reserve(n_taps);
  for (std::size_t k = 0; k < n_taps; ++k)
    x_filters_.emplace_back(secondary_taps);
  u_filters_.reserve(4);
  for (int j = 0; j < 4; ++j) u_filters_.emplace_back(secondary_taps);
}

void FcState::advance(const StepRecord& rec, const SafModel& m) {
  double dx = m.lut.dx();
  for (std::size_t k = 0; k < xf_.size(); ++k)
    xf_[k] = x_filters_[k].process(gradient_tap(rec, m.x_line[k], dx));
  for (std::size_t j = 0; j < 4; ++j)
    uf_[j] = u_filters_[j].process(rec.at.u_vec[j]);
}

void fc_update(SafModel& m, const StepRecord& rec, const FcState& fc, double e,
               StepSizes steps, const Criterion& crit) {
  double fe = crit.influence(e);
  double sw = steps.eta_w * fe;
  for (std::size_t k = 0; k < m.w.size(); ++k) m.w[k] += sw * fc.xf()[k];
  double sz = steps.eta_z * fe;
  auto mix = basis_mix(fc.uf());
  m.lut.add_to_segment(rec.at,
                       {sz * mix[0], sz * mix[1], sz * mix[2], sz * mix[3]});
}

double anr_step(AnrState& st, double e, double d) {
  st.a_e = st.chi * st.a_e + (1.0 - st.chi) * std::abs(e);
  st.a_d = st.chi * st.a_d + (1.0 - st.chi) * std::abs(d);
  if (st.a_d == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(st.a_e / st.a_d);
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct TrialResult {
  std::vector<double> anr_db;
  double max_abs_w = 0.0;
  bool diverged = false;
  std::vector<double> ref_waveform;
  std::vector<double> residual_waveform;
};

}  // namespace

AnrTrace run_anc(const AncConfig& cfg) {
  if (!cfg.criterion) throw std::invalid_argument("criterion required");
  if (cfg.n_iters < 1 || cfg.n_trials < 1)
    throw std::invalid_argument("need n_iters >= 1 and n_trials >= 1");
  if (cfg.n_taps < 1) throw std::invalid_argument("need n_taps >= 1");
  if (!(cfg.chi > 0.0 && cfg.chi < 1.0))
    throw std::invalid_argument("chi must be in (0, 1)");
  if (!(cfg.source_scale > 0.0))
    throw std::invalid_argument("source_scale must be > 0");
  validate(cfg.source);

  const Criterion& crit = *cfg.criterion;
  const StepSizes steps{cfg.mu_w * crit.step_fold(),
                        cfg.mu_z * crit.step_fold()};
  const double snr_ratio = std::pow(10.0, -cfg.snr_db / 10.0);

  std::vector<TrialResult> slots(cfg.n_trials);
  for_each_index(cfg.n_trials, cfg.threads, cfg.parallel, [&](std::size_t t) {
    TrialResult r;
    r.anr_db.assign(cfg.n_iters, kNan);

    // Source and clean disturbance first, so the measurement-noise level can
    // sit at snr_db below the disturbance power actually seen this trial.
    Rng src_rng(derive_seed(cfg.seed, t * 4));
    AncPaths paths = AncPaths::make_default();
    DelayLine u_past(2);
    std::vector<double> x(cfg.n_iters), d_clean(cfg.n_iters);
    for (std::size_t k = 0; k < cfg.n_iters; ++k) {
      x[k] = cfg.source_scale * sample_one(cfg.source, src_rng);
      d_clean[k] = primary_disturbance(paths, u_past);
      u_past.push(paths.primary.process(x[k]));
    }
    double d_power = mean_power(d_clean);
    double v_scale = d_power > 0.0 ? std::sqrt(d_power * snr_ratio) : 0.0;

    Rng meas_rng(derive_seed(cfg.seed, t * 4 + 1));
    std::vector<double> w0(cfg.n_taps, 0.0);
    SafModel m(w0, SplineLut(cfg.q, cfg.dx));
    FcState fc(cfg.n_taps, paths.secondary.taps());
    FirChannel to_mic(paths.secondary.taps());
    AnrState anr;
    anr.chi = cfg.chi;

    if (cfg.record_waveforms && t == 0) {
      r.ref_waveform.resize(cfg.n_iters);
      r.residual_waveform.resize(cfg.n_iters);
    }

    bool dead = false;
    for (std::size_t k = 0; k < cfg.n_iters; ++k) {
      StepRecord rec;
      try {
        rec = forward(m, x[k]);
      } catch (const SpanOutOfRange&) {
        dead = true;
        break;
      }
      double d_mic = d_clean[k] + v_scale * meas_rng.normal();
      double e = d_mic - to_mic.process(rec.y);
      if (!std::isfinite(e)) {
        dead = true;
        break;
      }
      fc.advance(rec, m);
      try {
        fc_update(m, rec, fc, e, steps, crit);
      } catch (const SingularAtZero&) {
        dead = true;
        break;
      }
      r.anr_db[k] = anr_step(anr, e, d_mic);
      for (double wk : m.w) r.max_abs_w = std::max(r.max_abs_w, std::abs(wk));
      if (!r.ref_waveform.empty()) {
        r.ref_waveform[k] = d_mic;
        r.residual_waveform[k] = e;
      }
    }
    r.diverged = dead;
    slots[t] = std::move(r);
  });

  AnrTrace out;
  out.trials = cfg.n_trials;
  out.anr_db.assign(cfg.n_iters, kNan);
  out.final_anr_db = kNan;

  std::vector<double> acc(cfg.n_iters, 0.0);
  std::size_t ok = 0;
  for (TrialResult& r : slots) {
    if (r.diverged) {
      out.diverged += 1;
      continue;
    }
    for (std::size_t k = 0; k < cfg.n_iters; ++k) acc[k] += r.anr_db[k];
    out.max_abs_w = std::max(out.max_abs_w, r.max_abs_w);
    ok += 1;
  }
  if (!slots.empty() && !slots[0].ref_waveform.empty() &&
      !slots[0].diverged) {
    out.ref_waveform = std::move(slots[0].ref_waveform);
    out.residual_waveform = std::move(slots[0].residual_waveform);
  }
  if (ok == 0) return out;

  for (std::size_t k = 0; k < cfg.n_iters; ++k)
    out.anr_db[k] = acc[k] / double(ok);
  std::size_t n_tail = std::max<std::size_t>(1, cfg.n_iters / 10);
  double tail = 0.0;
  for (std::size_t k = cfg.n_iters - n_tail; k < cfg.n_iters; ++k)
    tail += out.anr_db[k];
  out.final_anr_db = tail / double(n_tail);
  return out;
}

}  // namespace splinaf
