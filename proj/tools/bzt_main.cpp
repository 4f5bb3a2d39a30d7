#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bzt/commands.hpp"
#include "bzt/config.hpp"
#include "bzt/error.hpp"
#include "bzt/io.hpp"

namespace {

int emit(const bzt::CommandResult& r, const std::optional<std::string>& out) {
  if (out && !out->empty() && *out != "-") {
    bzt::write_text_file(*out, r.body);
  } else {
    std::cout << r.body;
    std::cout.flush();
  }
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-transition analysis of the three-species Oregonator model"};
  app.require_subcommand(1);

  std::string config_path;
  bzt::CliOverrides ov;
  std::string out, format;
  int modes = 0;
  double sigma = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "run configuration (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--modes", modes, "mode cap override")->check(CLI::PositiveNumber);
    sub->add_option("--sigma-override", sigma, "use this sigma instead of the steady-state root");
    sub->add_option("--seed", seed, "seed for random initial conditions");
  };

  auto* analyze = app.add_subcommand("analyze", "steady states, critical numbers, per-mode stability");
  auto* transition = app.add_subcommand("transition", "transition type and reduced coefficients");
  auto* simulate = app.add_subcommand("simulate", "integrate the ODE or PDE and detect cycles");
  auto* sweep = app.add_subcommand("sweep", "max real eigenvalue over a delta grid");
  auto* paper = app.add_subcommand("paper-check", "reproduce the worked example");
  for (auto* s : {analyze, transition, simulate, sweep}) add_common(s, true);
  add_common(paper, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  auto given = [](CLI::App* s, const char* name) { return s->count(name) > 0; };
  CLI::App* sub = app.get_subcommands().front();
  if (given(sub, "--out")) ov.out = out;
  if (given(sub, "--format")) ov.format = format;
  if (given(sub, "--modes")) ov.modes = modes;
  if (given(sub, "--sigma-override")) ov.sigma = sigma;
  if (given(sub, "--seed")) ov.seed = seed;

  try {
    if (sub == paper) {
      const bzt::PaperReport rep = bzt::paper_check();
      return emit(bzt::render_paper_report(rep, ov.format.value_or("text")), ov.out);
    }
    bzt::RunConfig cfg = bzt::load_config(config_path);
    bzt::apply_overrides(cfg, ov);
    bzt::resolve(cfg);
    bzt::CommandResult r;
    if (sub == analyze) r = bzt::cmd_analyze(cfg);
    else if (sub == transition) r = bzt::cmd_transition(cfg);
    else if (sub == simulate) r = bzt::cmd_simulate(cfg);
    else r = bzt::cmd_sweep(cfg);
    return emit(r, cfg.output_path);
  } catch (const bzt::Error& e) {
    std::fprintf(stderr, "error [%s/%s]: %s\n", e.module().c_str(), bzt::error_name(e.code()), e.what());
    return bzt::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
