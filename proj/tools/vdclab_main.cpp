// Command-line front end. Everything goes through the C API in vdclab.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vdclab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

int finish(vdc_report* report, bool json_output) {
  if (!report) {
    std::fprintf(stderr, "error (%d): %s\n", static_cast<int>(vdc_last_status()), vdc_last_message());
    return vdc_last_status() == VDC_E_INTERNAL ? kExitInputError : kExitInputError;
  }
  if (json_output) {
    std::printf("%s\n", vdc_report_json(report));
  }
  const bool pass = vdc_report_pass(report) != 0;
  if (!json_output) {
    std::printf("%s\n", pass ? "PASS" : "FAIL");
  }
  vdc_report_free(report);
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vdclab: correlation synthesis, inverse correspondence and spectral evidence"};
  app.require_subcommand(1);

  // synthesize
  std::string spec_path, out_csv, mps_path;
  double iid_p = -1.0;
  std::int64_t horizon = 65536;
  std::uint64_t seed = 1;
  double epsilon = 0.05;
  bool json_output = false;
  auto* synth = app.add_subcommand("synthesize", "synthesize a window with prescribed correlations");
  synth->add_option("--spec", spec_path, "correlation spec JSON")->required();
  synth->add_option("--mps", mps_path, "finite system JSON (witness source)");
  synth->add_option("--iid", iid_p, "iid Bernoulli witness source with this p");
  synth->add_option("--horizon", horizon, "window side (power of two)");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--epsilon", epsilon, "target tolerance");
  synth->add_option("--out", out_csv, "output window CSV");
  synth->add_flag("--json", json_output, "print the JSON report");

  // ifc
  std::string families;
  bool semigroup = false;
  auto* ifc = app.add_subcommand("ifc", "inverse correspondence: build a set with prescribed densities");
  ifc->add_option("--mps", mps_path, "finite system JSON ({0,1} observable)");
  ifc->add_option("--iid", iid_p, "iid Bernoulli source with this p");
  ifc->add_option("--shifts", families, "families, e.g. \"0,1;u:0,1,2;0,~3\"")->required();
  ifc->add_option("--horizon", horizon, "window side (power of two)");
  ifc->add_option("--seed", seed, "random seed");
  ifc->add_option("--epsilon", epsilon, "density tolerance");
  ifc->add_option("--out", out_csv, "output point CSV for the set");
  ifc->add_flag("--semigroup", semigroup, "restrict to {1,2,...}");
  ifc->add_flag("--json", json_output, "print the JSON report");

  // spectral
  std::string set_expr;
  int grid = 128;
  int steps = 5;
  double threshold = 0.05;
  auto* spectral = app.add_subcommand("spectral", "atom-mass LP evidence for vdC-ness");
  spectral->add_option("--set", set_expr, "finite:1,2,3 | squares:<=K | file:PATH")->required();
  spectral->add_option("--grid", grid, "grid resolution M");
  spectral->add_option("--truncate", steps, "number of truncation steps");
  spectral->add_option("--threshold", threshold, "vdC-evidence threshold");
  spectral->add_flag("--json", json_output, "print the JSON report");

  // weyl
  std::string window_path;
  int l_max = 8;
  double tol = 0.01;
  auto* weyl = app.add_subcommand("weyl", "Weyl uniform-distribution test for a window");
  weyl->add_option("--window", window_path, "window CSV or JSON")->required();
  weyl->add_option("--lmax", l_max, "largest power tested");
  weyl->add_option("--tol", tol, "power-sum tolerance");
  weyl->add_flag("--json", json_output, "print the JSON report");

  // whitenoise
  std::int64_t n = 100000;
  int entries = 10;
  auto* wnoise = app.add_subcommand("whitenoise", "generate white noise and check its correlations");
  wnoise->add_option("--n", n, "number of sites");
  wnoise->add_option("--seed", seed, "random seed");
  wnoise->add_option("--entries", entries, "number of battery entries (<= 10)");
  wnoise->add_option("--tol", tol, "modulus tolerance");
  wnoise->add_option("--out", out_csv, "output window CSV");
  wnoise->add_flag("--json", json_output, "print the JSON report");

  // casebook
  std::string case_name = "all";
  std::string params_json;
  auto* casebook = app.add_subcommand("casebook", "run the named experiments");
  auto* casebook_run = casebook->add_subcommand("run", "run a case or 'all'");
  casebook_run->add_option("name", case_name, "case name or 'all'");
  casebook_run->add_option("--params", params_json, "case parameter JSON");
  casebook_run->add_option("--seed", seed, "random seed");
  casebook_run->add_flag("--json", json_output, "print the JSON report");
  casebook->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  if (synth->parsed()) {
    vdc_spec* spec = vdc_spec_read(spec_path.c_str());
    if (!spec) return finish(nullptr, json_output);
    vdc_mps* mps = nullptr;
    if (!mps_path.empty()) {
      mps = vdc_mps_read(mps_path.c_str());
      if (!mps) {
        vdc_spec_free(spec);
        return finish(nullptr, json_output);
      }
    } else if (iid_p < 0.0) {
      std::fprintf(stderr, "error: synthesize needs --mps or --iid\n");
      vdc_spec_free(spec);
      return kExitInputError;
    }
    vdc_report* report = vdc_synthesize(spec, mps, iid_p, horizon, seed, epsilon,
                                        out_csv.empty() ? nullptr : out_csv.c_str());
    vdc_mps_free(mps);
    vdc_spec_free(spec);
    return finish(report, json_output);
  }

  if (ifc->parsed()) {
    vdc_mps* mps = nullptr;
    if (!mps_path.empty()) {
      mps = vdc_mps_read(mps_path.c_str());
      if (!mps) return finish(nullptr, json_output);
    } else if (iid_p < 0.0) {
      std::fprintf(stderr, "error: ifc needs --mps or --iid\n");
      return kExitInputError;
    }
    vdc_report* report = vdc_ifc(mps, iid_p, families.c_str(), horizon, seed, epsilon,
                                 semigroup ? 1 : 0, out_csv.empty() ? nullptr : out_csv.c_str());
    vdc_mps_free(mps);
    return finish(report, json_output);
  }

  if (spectral->parsed()) {
    return finish(vdc_spectral(set_expr.c_str(), grid, steps, threshold), json_output);
  }

  if (weyl->parsed()) {
    vdc_window* w = vdc_window_read(window_path.c_str());
    if (!w) return finish(nullptr, json_output);
    vdc_report* report = vdc_weyl(w, l_max, tol);
    vdc_window_free(w);
    return finish(report, json_output);
  }

  if (wnoise->parsed()) {
    return finish(vdc_whitenoise(n, seed, entries, tol, out_csv.empty() ? nullptr : out_csv.c_str()),
                  json_output);
  }

  if (casebook->parsed()) {
    return finish(vdc_casebook_run(case_name.c_str(), params_json.empty() ? nullptr : params_json.c_str(), seed),
                  json_output);
  }

  return kExitInputError;
}
