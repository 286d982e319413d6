#include "splinaf/presets.hpp"

#include <sstream>
#include <stdexcept>

#include "splinaf/io.hpp"

namespace splinaf {

namespace {

struct AlgoDef {
  const char* suffix;      // preset-name suffix; "" is the headline algorithm
  const char* label;       // human label used in summaries
  const char* kind;        // [criterion] kind
  double p1, p2, p3;       // meaning depends on kind
};

// NSI criterion set: the headline robust cost plus the published baselines.
const AlgoDef kNsiAlgos[] = {
    {"", "saf-gmbz (alpha=2, lambda=0.09, gamma=0.1)", "gmbz", 2.0, 0.09, 0.1},
    {"-lms", "saf-lms", "lms", 0, 0, 0},
    {"-mcc", "saf-mcc (sigma=1.5)", "mcc", 1.5, 0, 0},
    {"-gmcc", "saf-gmcc (shape=2, kernel=3)", "gmcc", 2.0, 3.0, 0},
};

const AlgoDef kAncAlgos[] = {
    {"", "fcgmbz (alpha=2, lambda=6, gamma=0.1)", "gmbz", 2.0, 6.0, 0.1},
    {"-lms", "fclms", "lms", 0, 0, 0},
    {"-mcc", "fcmcc (sigma=1.5)", "mcc", 1.5, 0, 0},
    {"-gmcc", "fcgmcc (shape=2, kernel=3)", "gmcc", 2.0, 3.0, 0},
};

void put_criterion(KvConfig& cfg, const AlgoDef& a) {
  cfg.set("criterion", "kind", std::string(a.kind));
  if (std::string(a.kind) == "mcc") {
    cfg.set("criterion", "sigma", a.p1);
  } else if (std::string(a.kind) == "gmcc") {
    cfg.set("criterion", "shape", a.p1);
    cfg.set("criterion", "kernel", a.p2);
  } else if (std::string(a.kind) == "gmbz") {
    cfg.set("criterion", "alpha", a.p1);
    cfg.set("criterion", "lambda", a.p2);
    cfg.set("criterion", "gamma", a.p3);
  }
}

struct NoiseDef {
  const char* label;
  void (*put)(KvConfig&);
};

void put_gaussian(KvConfig& c) {
  c.set("noise", "kind", std::string("gaussian"));
  c.set("noise", "var", 1.0);
}
void put_binary(KvConfig& c) {
  c.set("noise", "kind", std::string("binary"));
  c.set("noise", "amplitude", 1.0);
  c.set("noise", "p_neg", 0.65);
}
void put_laplace(KvConfig& c) {
  c.set("noise", "kind", std::string("laplace"));
  c.set("noise", "var", 1.0);
}
void put_uniform(KvConfig& c) {
  c.set("noise", "kind", std::string("uniform"));
  c.set("noise", "lo", -0.1);
  c.set("noise", "hi", 0.8);
}
void put_ggd(KvConfig& c) {
  c.set("noise", "kind", std::string("ggd"));
  c.set("noise", "shape", 0.3);
  c.set("noise", "var", 1.0);
}

void put_nsi_body(KvConfig& cfg, double mu_w, double mu_z) {
  cfg.set("run", "kind", std::string("nsi"));
  cfg.set("nsi", "mu_w", mu_w);
  cfg.set("nsi", "mu_z", mu_z);
  cfg.set("nsi", "snr_db", 30.0);
  cfg.set("nsi", "snr_ref", std::string("nominal"));
  cfg.set("nsi", "zeta", 0.1);
  cfg.set("nsi", "iters", std::uint64_t(50000));
  cfg.set("nsi", "trials", std::uint64_t(100));
  cfg.set("nsi", "seed", std::uint64_t(42));
  cfg.set("nsi", "q", std::uint64_t(83));
  cfg.set("nsi", "dx", 0.2);
  cfg.set("nsi", "steady_frac", 0.1);
}

void put_anc_body(KvConfig& cfg, double mu_w, double mu_z, double char_exp) {
  cfg.set("run", "kind", std::string("anc"));
  cfg.set("noise", "kind", std::string("alpha_stable"));
  cfg.set("noise", "char_exp", char_exp);
  cfg.set("noise", "skew", 0.0);
  cfg.set("noise", "scale", 1.0);
  cfg.set("noise", "location", 0.0);
  cfg.set("anc", "mu_w", mu_w);
  cfg.set("anc", "mu_z", mu_z);
  cfg.set("anc", "source_scale", 0.1);
  cfg.set("anc", "snr_db", 30.0);
  cfg.set("anc", "iters", std::uint64_t(60000));
  cfg.set("anc", "trials", std::uint64_t(100));
  cfg.set("anc", "seed", std::uint64_t(42));
  cfg.set("anc", "n_taps", std::uint64_t(8));
  cfg.set("anc", "q", std::uint64_t(200001));
  cfg.set("anc", "dx", 1.0);
  cfg.set("anc", "chi", 0.999);
  cfg.set("anc", "record_waveforms", std::uint64_t(0));
}

std::string describe(const char* what, const AlgoDef& a, const char* noise,
                     double mu_w, double mu_z) {
  std::ostringstream s;
  s << what << ": " << a.label << " under " << noise << ", mu_w="
    << format_double(mu_w) << ", mu_z=" << format_double(mu_z);
  return s.str();
}

std::vector<ExperimentPreset> build_presets() {
  std::vector<ExperimentPreset> out;

  // Learning-curve experiments: 5 noise families x 4 algorithms. Step sizes
  // follow the published tuning table column by column.
  struct NsiCase {
    const char* fig;
    NoiseDef noise;
    double steps[4][2];  // [algo][mu_w, mu_z] in kNsiAlgos order
  };
  const NsiCase nsi_cases[] = {
      {"fig7a",
       {"gaussian noise (30 dB)", put_gaussian},
       {{0.08, 0.9}, {0.04, 0.08}, {0.03, 0.06}, {0.005, 0.04}}},
      {"fig7b",
       {"binary noise (p_neg=0.65, 30 dB)", put_binary},
       {{0.04, 0.5}, {0.009, 0.25}, {0.01, 0.08}, {0.003, 0.03}}},
      {"fig7c",
       {"laplace noise (30 dB)", put_laplace},
       {{0.1, 0.8}, {0.05, 0.08}, {0.04, 0.09}, {0.003, 0.007}}},
      {"fig7d",
       {"uniform noise ([-0.1,0.8] shape, 30 dB)", put_uniform},
       {{0.02, 0.05}, {0.05, 0.05}, {0.03, 0.08}, {0.0009, 0.03}}},
      {"fig7e",
       {"impulsive ggd noise (shape=0.3, 30 dB)", put_ggd},
       {{0.04, 0.08}, {0.09, 0.5}, {0.005, 0.02}, {0.03, 0.09}}},
  };

  // identification showcase: same setting as the headline gaussian run
  {
    KvConfig cfg;
    put_nsi_body(cfg, 0.08, 0.9);
    put_criterion(cfg, kNsiAlgos[0]);
    put_gaussian(cfg);
    out.push_back({"fig5",
                   describe("nsi identification", kNsiAlgos[0],
                            "gaussian noise (30 dB)", 0.08, 0.9),
                   cfg});
  }

  for (const NsiCase& c : nsi_cases) {
    for (std::size_t a = 0; a < 4; ++a) {
      KvConfig cfg;
      put_nsi_body(cfg, c.steps[a][0], c.steps[a][1]);
      put_criterion(cfg, kNsiAlgos[a]);
      c.noise.put(cfg);
      out.push_back({std::string(c.fig) + kNsiAlgos[a].suffix,
                     describe("nsi", kNsiAlgos[a], c.noise.label,
                              c.steps[a][0], c.steps[a][1]),
                     cfg});
    }
  }

  // steady-state theory against simulation, step and snr sweeps
  {
    KvConfig cfg;
    put_nsi_body(cfg, 0.08, 0.9);
    cfg.set("run", "kind", std::string("theory"));
    cfg.set("nsi", "iters", std::uint64_t(200000));
    cfg.set("nsi", "trials", std::uint64_t(40));
    put_criterion(cfg, kNsiAlgos[0]);
    put_gaussian(cfg);
    cfg.set("theory", "mode", std::string("steps"));
    cfg.set("theory", "scales", std::string("0.125 0.25 0.5 1"));
    cfg.set("theory", "snrs", std::string("20 25 30"));
    cfg.set("theory", "snr_step_scale", 0.25);
    out.push_back(
        {"fig8",
         "steady-state theory vs simulation: saf-gmbz (alpha=2, lambda=0.09, "
         "gamma=0.1) under gaussian noise; --mode steps sweeps scaled steps, "
         "--mode snr sweeps 20/25/30 dB",
         cfg});
  }

  // active-control experiments: stable source intensities x 4 algorithms
  struct AncCase {
    const char* fig;
    double char_exp;
    double steps[4][2];  // kAncAlgos order
  };
  const AncCase anc_cases[] = {
      {"fig10a", 2.0, {{0.1, 1e-5}, {0.3, 1e-5}, {0.2, 8e-5}, {0.1, 1e-5}}},
      {"fig10b", 1.8, {{0.3, 1e-5}, {0.3, 1e-5}, {0.2, 8e-5}, {0.3, 1e-5}}},
      {"fig10c", 1.7, {{0.1, 1e-4}, {0.3, 1e-5}, {0.2, 1e-4}, {0.3, 1e-4}}},
      {"fig10d", 1.5, {{0.2, 1e-4}, {0.3, 1e-5}, {0.2, 1e-4}, {0.3, 1e-5}}},
  };

  // single-run waveform recording under the headline controller
  {
    KvConfig cfg;
    put_anc_body(cfg, 0.1, 1e-5, 2.0);
    put_criterion(cfg, kAncAlgos[0]);
    cfg.set("anc", "trials", std::uint64_t(1));
    cfg.set("anc", "record_waveforms", std::uint64_t(1));
    out.push_back({"fig9",
                   describe("anc waveforms", kAncAlgos[0],
                            "stable source (char_exp=2)", 0.1, 1e-5),
                   cfg});
  }

  for (const AncCase& c : anc_cases) {
    for (std::size_t a = 0; a < 4; ++a) {
      KvConfig cfg;
      put_anc_body(cfg, c.steps[a][0], c.steps[a][1], c.char_exp);
      put_criterion(cfg, kAncAlgos[a]);
      std::ostringstream noise;
      noise << "stable source (char_exp=" << c.char_exp << ")";
      out.push_back({std::string(c.fig) + kAncAlgos[a].suffix,
                     describe("anc", kAncAlgos[a], noise.str().c_str(),
                              c.steps[a][0], c.steps[a][1]),
                     cfg});
    }
  }

  return out;
}

}  // namespace

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> all = build_presets();
  return all;
}

const ExperimentPreset* find_preset(const std::string& name) {
  for (const ExperimentPreset& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

std::shared_ptr<const Criterion> criterion_from_config(const KvConfig& cfg) {
  std::string kind = cfg.get_str("criterion", "kind");
  if (kind == "lms") return std::make_shared<Lms>();
  if (kind == "sign") return std::make_shared<Sign>();
  if (kind == "mcc")
    return std::make_shared<Mcc>(cfg.get_double("criterion", "sigma"));
  if (kind == "gmcc")
    return std::make_shared<Gmcc>(cfg.get_double("criterion", "shape"),
                                  cfg.get_double("criterion", "kernel"));
  if (kind == "gmbz")
    return std::make_shared<Gmbz>(
        GmbzParams{cfg.get_double("criterion", "alpha"),
                   cfg.get_double("criterion", "lambda"),
                   cfg.get_double("criterion", "gamma")});
  throw std::invalid_argument("unknown criterion kind: " + kind);
}

NoiseSpec noise_from_config(const KvConfig& cfg, const std::string& section) {
  std::string kind = cfg.get_str(section, "kind");
  NoiseSpec spec;
  if (kind == "gaussian") {
    spec = NoiseSpec::gaussian(cfg.get_double(section, "var"));
  } else if (kind == "laplace") {
    spec = NoiseSpec::laplace(cfg.get_double(section, "var"));
  } else if (kind == "ggd") {
    spec = NoiseSpec::ggd(cfg.get_double(section, "shape"),
                          cfg.get_double(section, "var"));
  } else if (kind == "binary") {
    spec = NoiseSpec::binary(cfg.get_double(section, "amplitude"),
                             cfg.get_double(section, "p_neg"));
  } else if (kind == "uniform") {
    spec = NoiseSpec::uniform(cfg.get_double(section, "lo"),
                              cfg.get_double(section, "hi"));
  } else if (kind == "alpha_stable") {
    spec = NoiseSpec::alpha_stable(cfg.get_double(section, "char_exp"),
                                   cfg.get_double(section, "skew", 0.0),
                                   cfg.get_double(section, "scale", 1.0),
                                   cfg.get_double(section, "location", 0.0));
  } else {
    throw std::invalid_argument("unknown noise kind: " + kind);
  }
  validate(spec);
  return spec;
}

NsiConfig nsi_from_config(const KvConfig& cfg) {
  NsiConfig c;
  c.criterion = criterion_from_config(cfg);
  c.noise = noise_from_config(cfg, "noise");
  c.mu_w = cfg.get_double("nsi", "mu_w");
  c.mu_z = cfg.get_double("nsi", "mu_z");
  c.snr_db = cfg.get_double("nsi", "snr_db", c.snr_db);
  std::string ref = cfg.get_str("nsi", "snr_ref", "nominal");
  if (ref == "nominal") {
    c.snr_ref = SnrRef::NominalUnit;
  } else if (ref == "empirical") {
    c.snr_ref = SnrRef::EmpiricalClean;
  } else if (ref == "raw") {
    c.snr_ref = SnrRef::RawSpec;
  } else {
    throw std::invalid_argument("unknown snr_ref: " + ref);
  }
  c.zeta = cfg.get_double("nsi", "zeta", c.zeta);
  c.n_iters = cfg.get_u64("nsi", "iters", c.n_iters);
  c.n_trials = cfg.get_u64("nsi", "trials", c.n_trials);
  c.seed = cfg.get_u64("nsi", "seed", c.seed);
  c.q = cfg.get_u64("nsi", "q", c.q);
  c.dx = cfg.get_double("nsi", "dx", c.dx);
  c.steady_frac = cfg.get_double("nsi", "steady_frac", c.steady_frac);
  return c;
}

AncConfig anc_from_config(const KvConfig& cfg) {
  AncConfig c;
  c.criterion = criterion_from_config(cfg);
  c.source = noise_from_config(cfg, "noise");
  c.mu_w = cfg.get_double("anc", "mu_w");
  c.mu_z = cfg.get_double("anc", "mu_z");
  c.source_scale = cfg.get_double("anc", "source_scale", c.source_scale);
  c.snr_db = cfg.get_double("anc", "snr_db", c.snr_db);
  c.n_iters = cfg.get_u64("anc", "iters", c.n_iters);
  c.n_trials = cfg.get_u64("anc", "trials", c.n_trials);
  c.seed = cfg.get_u64("anc", "seed", c.seed);
  c.n_taps = cfg.get_u64("anc", "n_taps", c.n_taps);
  c.q = cfg.get_u64("anc", "q", c.q);
  c.dx = cfg.get_double("anc", "dx", c.dx);
  c.chi = cfg.get_double("anc", "chi", c.chi);
  c.record_waveforms = cfg.get_u64("anc", "record_waveforms", 0) != 0;
  return c;
}

}  // namespace splinaf
