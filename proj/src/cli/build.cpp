#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "halfwt/cli/commands.hpp"
#include "halfwt/coeffs/normalize.hpp"
#include "halfwt/stats/export.hpp"

namespace halfwt::cli {

using nlohmann::ordered_json;

namespace {

// Eigenvalues listed in the build report; 3 and 5 also pair the lift partner.
const std::vector<int> kReportPrimes{3, 5, 7};

// Precision used only to locate the lift parameters.
constexpr std::size_t kProbePrecision = 2000;

class LiftFailure : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

ordered_json eigenvalue_json(const std::vector<std::pair<int, arith::AlgebraicNumber>>& v) {
  ordered_json out = ordered_json::object();
  for (const auto& [p, a] : v) out[std::to_string(p)] = a.to_string();
  return out;
}

}  // namespace

std::size_t peak_rss_bytes() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream fields(line.substr(6));
      std::size_t kb = 0;
      fields >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

BuildResult cmd_build(const RunConfig& cfg, std::ostream& log) {
  validate_build(cfg);
  const auto start = std::chrono::steady_clock::now();
  const int ell = cfg.ell();
  std::filesystem::create_directories(cfg.out);
  BuildResult result;

  const modforms::EigenSystem sys = modforms::eigen_system(ell, kReportPrimes);
  result.dimension = sys.basis.dimension();
  log << "weight " << cfg.two_k << "/2: dimension " << result.dimension << ", T(9) charpoly "
      << sys.charpoly.to_string() << "\n";

  // a(t) lies in K, so a(t) = 0 for one embedding iff for all of them.
  {
    const auto probe = modforms::eigenforms_from_system(sys, kProbePrecision);
    result.lift_parameters = shimura::lift_parameters(probe.front(), cfg.lift_count);
  }
  if (result.lift_parameters.empty())
    throw LiftFailure("no recorded index t < " + std::to_string(kProbePrecision) + " with a(t) != 0 for weight " +
                      std::to_string(cfg.two_k) + "/2");
  const std::uint64_t t_max = result.lift_parameters.back();
  result.precision = std::max<std::size_t>(cfg.bound + 1, shimura::lift_precision(t_max, cfg.lift_depth));
  log << "expanding to precision " << result.precision << "\n";

  std::size_t cache_bytes = 0;
  std::vector<modforms::HalfIntegralForm> forms;
  {
    modforms::ThetaPowers cache(ell % 2 == 0 ? 1 : 3, result.precision);
    forms = modforms::eigenforms_from_system(sys, result.precision, &cache);
    cache_bytes = cache.bytes();
  }
  const std::size_t expansion_bytes = forms.front().expansion->bytes();

  // Normalization: one worker per form, or all threads on a single form.
  std::vector<coeffs::CoeffStream> streams(forms.size());
  const unsigned inner = forms.size() == 1 ? cfg.threads : 1;
  parallel_for(forms.size(), cfg.threads,
               [&](std::size_t i) { streams[i] = coeffs::normalize(forms[i], cfg.bound, inner); });
  for (const auto& s : streams) {
    const auto path = cfg.out / (file_stem(s.label) + ".coeffs");
    coeffs::write_stream(s, path);
    result.coefficient_files.push_back(path);
    log << "wrote " << path.string() << " (" << s.entries.size() << " coefficients)\n";
  }

  // Lift certificates.
  std::vector<std::vector<shimura::LiftReport>> lifts(forms.size());
  parallel_for(forms.size(), cfg.threads, [&](std::size_t i) {
    const auto g = shimura::level1_partner(forms[i], cfg.lift_depth + 1);
    for (std::uint64_t t : result.lift_parameters) lifts[i].push_back(shimura::verify_lift(forms[i], g, t, cfg.lift_depth));
  });

  ordered_json report;
  report["label"] = modforms::form_label(ell, 1, 1);
  report["two_k"] = cfg.two_k;
  report["ell"] = ell;
  report["dimension"] = result.dimension;
  report["charpoly_T9"] = sys.charpoly.to_string();
  report["bound"] = cfg.bound;
  report["precision"] = result.precision;
  report["lift_depth"] = cfg.lift_depth;
  report["lift_parameters"] = result.lift_parameters;
  ordered_json eig = ordered_json::object();
  for (const auto& [p, a] : sys.eigenvalues) eig[std::to_string(p)] = a.to_string();
  report["eigenvalues"] = eig;
  report["forms"] = ordered_json::array();
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    ordered_json f;
    f["label"] = forms[i].label;
    f["index"] = forms[i].index;
    f["file"] = result.coefficient_files[i].filename().string();
    f["count"] = streams[i].entries.size();
    f["generator"] = stats::format_real(forms[i].embedding.approx());
    f["lifts"] = ordered_json::array();
    for (const auto& r : lifts[i]) {
      ordered_json l;
      l["t"] = r.t;
      l["depth"] = r.depth;
      l["certified"] = r.certified();
      l["max_abs_discrepancy"] = r.max_abs_discrepancy.get_str();
      l["first_mismatch"] = r.first_mismatch;
      l["matched_eigenvalues"] = eigenvalue_json(r.matched_eigenvalues);
      l["lift_eigenvalues"] = eigenvalue_json(r.lift_eigenvalues);
      f["lifts"].push_back(l);
      if (!r.certified())
        failures.push_back(r.label + " t=" + std::to_string(r.t) + ": first mismatch at n=" +
                           std::to_string(r.first_mismatch) + ", max discrepancy " + r.max_abs_discrepancy.get_str());
      result.lifts.push_back(r);
    }
    report["forms"].push_back(f);
  }
  const std::string stem = file_stem(modforms::form_label(ell, 1, 1));
  result.report = cfg.out / (stem + ".build.json");
  stats::write_text(result.report, report.dump(2) + "\n");

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream timing;
  timing << "wall_seconds=" << stats::format_real(seconds) << "\n"
         << "peak_rss_bytes=" << peak_rss_bytes() << "\n"
         << "expansion_bytes=" << expansion_bytes << "\n"
         << "theta_cache_bytes=" << cache_bytes << "\n"
         << "threads=" << cfg.threads << "\n";
  result.timing = cfg.out / (stem + ".timing");
  stats::write_text(result.timing, timing.str());
  log << "wrote " << result.report.string() << "\n";

  if (!failures.empty()) {
    std::string msg = "lift certificate failed:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw LiftFailure(msg);
  }
  return result;
}

}  // namespace halfwt::cli
