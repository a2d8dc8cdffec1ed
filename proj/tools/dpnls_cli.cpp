// Thin command-line front end over the C API.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpnls.h"

int main(int argc, char** argv) {
  CLI::App app{"dpnls: minimal-mass blow-up laboratory for the double-power "
               "nonlinear Schrodinger equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  app.add_option("-c,--config", config_path, "config file (key = value with [section] headers)");
  app.add_option("-s,--set", sets, "override a config key, e.g. --set problem.d=2")
      ->take_all();
  bool show_config = false;
  app.add_flag("--show-config", show_config, "print the resolved configuration before running");

  const char* commands[] = {"groundstate",     "linops-audit",
                            "profile-build",   "law-integrate",
                            "evolve-validate", "minimal-mass",
                            "defocusing-sanity", "report"};
  const char* descs[] = {
      "solve the ground state (and the subcritical-mass solitary waves)",
      "kernel identities and coercivity of the linearized operators",
      "build the blow-up profile and check its residual scaling",
      "integrate the reduced (b, lambda) law and fit its rates",
      "propagate the explicit critical blow-up solution against itself",
      "full minimal-mass run: evolution + decomposition + rate fits",
      "defocusing perturbation run from the ground state",
      "summarize the artifacts in the output directory"};
  std::string chosen;
  for (size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i], descs[i]);
    sub->fallthrough();  // allow -c/-s after the subcommand too
    sub->callback([&chosen, name = std::string(commands[i])] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<dpnls_session, void (*)(dpnls_session*)> ses(
      dpnls_session_create(), dpnls_session_destroy);
  if (!config_path.empty()) dpnls_load_config(ses.get(), config_path.c_str());
  for (const auto& kv : sets) {
    if (dpnls_set_option(ses.get(), kv.c_str()) != DPNLS_OK) {
      fprintf(stderr, "bad --set value: %s\n", kv.c_str());
      return 2;
    }
  }
  if (show_config) {
    const char* txt = dpnls_config_text(ses.get());
    if (!txt) {
      fprintf(stderr, "config error: %s\n", dpnls_last_error(ses.get()));
      return 2;
    }
    fputs(txt, stdout);
  }

  dpnls_status st = dpnls_run(ses.get(), chosen.c_str());
  fputs(dpnls_last_output(ses.get()), stdout);
  if (st == DPNLS_OK) return 0;
  if (st == DPNLS_ERR_ASSERTION) {
    fprintf(stderr, "%s: %s\n", chosen.c_str(), dpnls_last_error(ses.get()));
    return 1;
  }
  fprintf(stderr, "%s failed: %s\n", chosen.c_str(), dpnls_last_error(ses.get()));
  return 2;
}
