#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "presets.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fractional diffusion-wave PINN toolkit"};
  app.require_subcommand(1);

  using namespace fpinn::cli;

  GjTableOptions gj;
  auto* gj_cmd = app.add_subcommand("gj-table", "print a Gauss-Jacobi rule as CSV");
  gj_cmd->add_option("--alpha", gj.alpha, "fractional order")->required();
  gj_cmd->add_option("--m", gj.m, "number of points")->required();
  gj_cmd->add_option("--n", gj.n, "order bracket (1 or 2)")->default_val(2);
  gj_cmd->add_option("--out", gj.out, "output file (default stdout)");

  ValidateOptions vd;
  auto* vd_cmd = app.add_subcommand(
      "validate-derivative", "estimate the Caputo derivative of exp(lambda t) vs the oracle");
  vd_cmd->add_option("--alpha", vd.alpha)->required();
  vd_cmd->add_option("--scheme", vd.scheme, "mc1|gj1|mc2|gj2")->required();
  vd_cmd->add_option("--m", vd.m)->required();
  vd_cmd->add_option("--t", vd.t)->required();
  vd_cmd->add_option("--lambda", vd.lambda)->required();
  vd_cmd->add_option("--seed", vd.seed);
  vd_cmd->add_option("--out", vd.out, "output file (default stdout)");

  SweepOptions sw;
  auto* sw_cmd = app.add_subcommand("sweep", "scheme-comparison sweeps over alpha or M");
  sw_cmd->add_option("--axis", sw.axis, "alpha | m")->required();
  sw_cmd->add_option("--from", sw.from);
  sw_cmd->add_option("--to", sw.to);
  sw_cmd->add_option("--points", sw.points);
  sw_cmd->add_option("--t", sw.t);
  sw_cmd->add_option("--lambda", sw.lambda);
  sw_cmd->add_option("--m-mc", sw.m_mc, "MC points for the alpha sweep");
  sw_cmd->add_option("--m-gj", sw.m_gj, "GJ points for the alpha sweep");
  sw_cmd->add_option("--seed", sw.seed);
  sw_cmd->add_option("--out", sw.out)->required();

  TrainOptions tr;
  auto* tr_cmd = app.add_subcommand("train", "train a PINN from a config file or preset");
  tr_cmd->add_option("--config", tr.config_path, "INI config file");
  tr_cmd->add_option("--preset", tr.preset, "named preset (see --list-presets)");
  tr_cmd->add_option("--set", tr.overrides, "override: section.key=value")->take_all();
  tr_cmd->add_option("--out", tr.out_dir, "output directory")->default_val(".");
  tr_cmd->add_flag("--serial", tr.serial, "single-thread, bit-exact reproduction mode");
  tr_cmd->add_option("--threads", tr.threads, "worker count (default: hardware)");
  tr_cmd->add_option("--log-every", tr.log_every, "stderr progress every N epochs");

  EvaluateOptions ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "write a prediction grid from a checkpoint");
  ev_cmd->add_option("--checkpoint", ev.checkpoint)->required();
  ev_cmd->add_option("--problem", ev.problem, "dw_eq19|dw_eq24|burgers_eq26");
  ev_cmd->add_option("--alpha", ev.alpha);
  ev_cmd->add_option("--T", ev.T);
  ev_cmd->add_option("--k-mode", ev.k_mode);
  ev_cmd->add_option("--lambda", ev.lambda);
  ev_cmd->add_option("--grid", ev.grid);
  ev_cmd->add_option("--out", ev.out)->required();

  bool list_presets = false;
  auto* lp_cmd = app.add_subcommand("list-presets", "show example preset names");
  lp_cmd->callback([&] { list_presets = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_presets) {
      for (const auto& name : preset_examples()) std::printf("%s\n", name.c_str());
      return 0;
    }
    if (gj_cmd->parsed()) return cmd_gj_table(gj);
    if (vd_cmd->parsed()) return cmd_validate_derivative(vd);
    if (sw_cmd->parsed()) return cmd_sweep(sw);
    if (tr_cmd->parsed()) return cmd_train(tr);
    if (ev_cmd->parsed()) return cmd_evaluate(ev);
  } catch (const fpinn::ConfigError& e) {
    std::fprintf(stderr, "error: config line %d: %s\n", e.line_number, e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
