// halfwt: build, analyze and report on normalized coefficients of
// half-integral weight eigenforms.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halfwt/cli/commands.hpp"

namespace cli = halfwt::cli;

int main(int argc, char** argv) {
  CLI::App app{"Coefficient statistics of half-integral weight Hecke eigenforms"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string widths, models;
  std::vector<std::string> intervals;
  std::vector<std::string> files;
  std::string out = cfg.out.string();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Run directory")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for synthetic data")->capture_default_str();
  };
  auto analysis = [&](CLI::App* sub) {
    sub->add_option("--widths", widths, "Comma-separated box widths (default 0.001,0.0001,0.00001)");
    sub->add_option("--models", models, "Comma-separated models among GGG,GG,Laplace,Cauchy (default all)");
    sub->add_option("--subsets", cfg.subsets, "Split each stream into this many consecutive pieces")
        ->capture_default_str();
    sub->add_flag("--prime-only", cfg.prime_only, "Also fit the prime-indexed coefficients");
    sub->add_flag("--nonempty-only", cfg.nonempty_only,
                  "Fit occupied bins only (default also fits empty bins inside the occupied range)");
    sub->add_option("--interval", intervals, "Interval lo:hi for independence ratios (repeatable)");
  };

  auto* build = app.add_subcommand("build", "Compute eigenforms, coefficient files and lift certificates");
  build->add_option("--weight", cfg.two_k, "Numerator 2k of the weight 2k/2")->required();
  build->add_option("--bound", cfg.bound, "Largest coefficient index X")->capture_default_str();
  build->add_option("--lift-depth", cfg.lift_depth, "Compare lifts up to this index")->capture_default_str();
  build->add_option("--lift-count", cfg.lift_count, "Number of lift parameters t per form")->capture_default_str();
  common(build);

  auto* analyze = app.add_subcommand("analyze", "Histogram, fit and sign statistics for coefficient files");
  analyze->add_option("files", files, "Coefficient files (default: all *.coeffs in --out)");
  common(analyze);
  analysis(analyze);

  auto* report = app.add_subcommand("report", "Summarize a run directory");
  common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  return cli::run_guarded(
      [&]() -> int {
        cfg.out = out;
        if (!widths.empty()) cfg.widths = cli::parse_widths(widths);
        if (!models.empty()) cfg.models = cli::parse_models(models);
        if (!intervals.empty()) {
          cfg.intervals.clear();
          for (const auto& s : intervals) cfg.intervals.push_back(cli::parse_interval(s));
        }
        if (*build) {
          cli::cmd_build(cfg, std::cout);
        } else if (*analyze) {
          std::vector<std::filesystem::path> paths(files.begin(), files.end());
          const auto r = cli::cmd_analyze(cfg, paths, std::cout);
          if (!r.fit_failures.empty()) {
            std::string msg = std::to_string(r.fit_failures.size()) + " fit(s) failed:";
            for (const auto& f : r.fit_failures) msg += "\n  " + f;
            throw cli::FitFailure(msg);
          }
        } else {
          const auto r = cli::cmd_report(cfg.out, std::cout);
          if (r.empty) std::cout << "status: nothing to report\n";
        }
        return cli::kSuccess;
      },
      std::cerr);
}
