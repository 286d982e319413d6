#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splinaf/anc.hpp"
#include "splinaf/config.hpp"
#include "splinaf/io.hpp"
#include "splinaf/presets.hpp"
#include "splinaf/sysid.hpp"

namespace fs = std::filesystem;
using namespace splinaf;

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  double v;
  while (in >> v) out.push_back(v);
  if (out.empty()) throw std::invalid_argument("empty numeric list: " + text);
  return out;
}

void apply_override(KvConfig& cfg, const std::string& spec) {
  std::size_t dot = spec.find('.');
  std::size_t eq = spec.find('=');
  if (dot == std::string::npos || eq == std::string::npos || dot > eq ||
      dot == 0 || eq == dot + 1)
    throw std::invalid_argument("override must look like section.key=value: " +
                                spec);
  cfg.set(spec.substr(0, dot), spec.substr(dot + 1, eq - dot - 1),
          spec.substr(eq + 1));
}

using Summary = std::vector<std::pair<std::string, std::string>>;

void emit_summary(const fs::path& dir, const Summary& kv) {
  write_summary((dir / "summary").string(), kv);
  for (const auto& [k, v] : kv) std::cout << k << " = " << v << "\n";
}

int run_identification(const KvConfig& cfg, const fs::path& dir,
                       const std::string& name, int threads, bool svg) {
  NsiConfig c = nsi_from_config(cfg);
  c.threads = threads;
  MseTrace tr = run_nsi(c);
  write_trace_csv((dir / "trace.csv").string(), "mse_db", tr.mse_db);
  if (svg)
    write_svg((dir / "plot.svg").string(), tr.mse_db, "iteration", "mse (dB)");
  Summary kv = {
      {"name", name},
      {"kind", "nsi"},
      {"criterion", c.criterion->name()},
      {"noise", kind_name(c.noise.kind)},
      {"trials", std::to_string(tr.trials)},
      {"diverged", std::to_string(tr.diverged)},
      {"final_mse_db", format_double(tr.final_mse_db)},
      {"final_emse_db", format_double(tr.final_emse_db)},
      {"sigma_v2", format_double(tr.sigma_v2)},
  };
  emit_summary(dir, kv);
  return 2 * tr.diverged > tr.trials ? 1 : 0;
}

int run_control(const KvConfig& cfg, const fs::path& dir,
                const std::string& name, int threads, bool svg) {
  AncConfig c = anc_from_config(cfg);
  c.threads = threads;
  AnrTrace tr = run_anc(c);
  write_trace_csv((dir / "trace.csv").string(), "anr_db", tr.anr_db);
  if (!tr.ref_waveform.empty())
    write_waveform_csv((dir / "waveform.csv").string(), tr.ref_waveform,
                       tr.residual_waveform);
  if (svg)
    write_svg((dir / "plot.svg").string(), tr.anr_db, "iteration", "anr (dB)");
  Summary kv = {
      {"name", name},
      {"kind", "anc"},
      {"criterion", c.criterion->name()},
      {"source", kind_name(c.source.kind)},
      {"trials", std::to_string(tr.trials)},
      {"diverged", std::to_string(tr.diverged)},
      {"final_anr_db", format_double(tr.final_anr_db)},
      {"max_abs_w", format_double(tr.max_abs_w)},
  };
  emit_summary(dir, kv);
  return 2 * tr.diverged > tr.trials ? 1 : 0;
}

int run_theory(const KvConfig& cfg, const fs::path& dir,
               const std::string& name, int threads, bool svg) {
  NsiConfig base = nsi_from_config(cfg);
  base.threads = threads;
  std::string mode = cfg.get_str("theory", "mode", "steps");
  std::vector<TheoryPoint> pts;
  if (mode == "steps") {
    pts = compare_theory_steps(
        base, parse_list(cfg.get_str("theory", "scales", "0.125 0.25 0.5 1")));
  } else if (mode == "snr") {
    double ss = cfg.get_double("theory", "snr_step_scale", 1.0);
    base.mu_w *= ss;
    base.mu_z *= ss;
    pts = compare_theory_snr(base,
                             parse_list(cfg.get_str("theory", "snrs",
                                                    "20 25 30")));
  } else {
    throw std::invalid_argument("theory mode must be steps or snr, got " +
                                mode);
  }
  write_theory_csv((dir / "theory.csv").string(), pts);
  if (svg) {
    std::vector<double> sim;
    for (const auto& p : pts) sim.push_back(p.sim_emse_db);
    write_svg((dir / "plot.svg").string(), sim, "grid point", "emse (dB)");
  }
  Summary kv = {
      {"name", name},
      {"kind", "theory"},
      {"mode", mode},
      {"points", std::to_string(pts.size())},
  };
  for (const auto& p : pts) {
    kv.emplace_back("sim_emse_db[" + p.setting + "]",
                    format_double(p.sim_emse_db));
    kv.emplace_back("pred_emse_db[" + p.setting + "]",
                    format_double(p.pred_emse_db));
  }
  emit_summary(dir, kv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spline adaptive filtering experiment runner"};
  app.require_subcommand(1);

  CLI::App* list =
      app.add_subcommand("list-presets", "print every preset and its tuning");

  CLI::App* run = app.add_subcommand("run", "run a preset or a config file");
  std::string target;
  run->add_option("target", target, "preset name or config file path")
      ->required();
  std::uint64_t trials = 0, iters = 0, seed = 0;
  int threads = 0;
  std::string out_root, mode;
  bool svg = false;
  std::vector<std::string> overrides;
  CLI::Option* opt_trials =
      run->add_option("--trials", trials, "override the trial count");
  CLI::Option* opt_iters =
      run->add_option("--iters", iters, "override the iteration count");
  CLI::Option* opt_seed =
      run->add_option("--seed", seed, "override the master seed");
  run->add_option("--threads", threads, "worker thread cap (0 = auto)");
  run->add_option("--out", out_root,
                  "output root (default $SPLINAF_OUT or .)");
  run->add_flag("--svg", svg, "also write plot.svg");
  CLI::Option* opt_mode = run->add_option(
      "--mode", mode, "theory sweep variable: steps or snr");
  run->add_option("--override", overrides,
                  "set one config value, section.key=value")
      ->expected(1)
      ->allow_extra_args(false);

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const ExperimentPreset& p : presets())
      std::printf("%-12s %s\n", p.name.c_str(), p.summary.c_str());
    return 0;
  }

  try {
    KvConfig cfg;
    std::string name;
    if (const ExperimentPreset* p = find_preset(target)) {
      cfg = p->config;
      name = p->name;
    } else if (fs::exists(target)) {
      cfg = KvConfig::load(target);
      name = fs::path(target).stem().string();
    } else {
      std::cerr << "unknown preset or config file: " << target << "\n";
      return 2;
    }

    for (const std::string& ov : overrides) apply_override(cfg, ov);

    std::string kind = cfg.get_str("run", "kind");
    std::string sec = kind == "anc" ? "anc" : "nsi";
    if (*opt_trials) cfg.set(sec, "trials", trials);
    if (*opt_iters) cfg.set(sec, "iters", iters);
    if (*opt_seed) cfg.set(sec, "seed", seed);
    if (*opt_mode) cfg.set("theory", "mode", mode);

    if (out_root.empty()) {
      const char* env = std::getenv("SPLINAF_OUT");
      out_root = env != nullptr && *env != '\0' ? env : ".";
    }
    fs::path dir = fs::path(out_root) / name;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
      std::cerr << "cannot create output dir " << dir << ": " << ec.message()
                << "\n";
      return 2;
    }

    if (kind == "nsi") return run_identification(cfg, dir, name, threads, svg);
    if (kind == "anc") return run_control(cfg, dir, name, threads, svg);
    if (kind == "theory") return run_theory(cfg, dir, name, threads, svg);
    std::cerr << "unknown run kind: " << kind << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
