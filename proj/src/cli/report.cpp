#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "halfwt/cli/commands.hpp"
#include "halfwt/stats/export.hpp"

namespace halfwt::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load_json(const fs::path& p) {
  std::ifstream in(p);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string cell(const json& fits, const std::string& model, const std::string& param) {
  for (const auto& f : fits)
    if (f.value("model", "") == model && f.contains("params") && f["params"].contains(param))
      return num(f["params"][param].get<double>());
  return "-";
}

std::string rms_cell(const json& fits, const std::string& model) {
  for (const auto& f : fits)
    if (f.value("model", "") == model && f.contains("rms")) return num(f["rms"].get<double>());
  return "-";
}

// Model columns actually present, in canonical order.
std::vector<stats::ModelTag> models_in(const std::vector<json>& fit_lists) {
  std::vector<stats::ModelTag> out;
  for (auto m : stats::kAllModels)
    for (const auto& fits : fit_lists)
      for (const auto& f : fits)
        if (f.value("model", "") == stats::to_string(m) && std::find(out.begin(), out.end(), m) == out.end())
          out.push_back(m);
  return out;
}

void parameter_block(std::ostringstream& out, const std::vector<std::string>& rows, const std::vector<json>& fits) {
  const auto models = models_in(fits);
  out << "set";
  for (auto m : models)
    for (const auto& n : stats::parameter_names(m)) out << "\t" << stats::to_string(m) << "." << n;
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r];
    for (auto m : models)
      for (const auto& n : stats::parameter_names(m)) out << "\t" << cell(fits[r], stats::to_string(m), n);
    out << "\n";
  }
  out << "\nset";
  for (auto m : models) out << "\trms." << stats::to_string(m);
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r];
    for (auto m : models) out << "\t" << rms_cell(fits[r], stats::to_string(m));
    out << "\n";
  }
}

std::vector<fs::path> files_with_suffix(const fs::path& dir, const std::string& suffix) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ReportResult cmd_report(const fs::path& dir, std::ostream& log) {
  if (!fs::is_directory(dir)) throw ConfigError("run directory " + dir.string() + " does not exist");
  ReportResult result;
  result.summary = dir / "summary.txt";
  result.plots = dir / "plots.gp";

  const auto builds = files_with_suffix(dir, ".build.json");
  const auto analyses = files_with_suffix(dir, ".analysis.json");
  const auto coeff_files = files_with_suffix(dir, ".coeffs");
  if (builds.empty() && analyses.empty() && coeff_files.empty()) {
    result.empty = true;
    stats::write_text(result.summary, "status=nothing to report\n");
    log << "nothing to report in " << dir.string() << "\n";
    return result;
  }

  std::vector<json> build_docs, analysis_docs;
  for (const auto& p : builds) build_docs.push_back(load_json(p));
  for (const auto& p : analyses) analysis_docs.push_back(load_json(p));

  std::vector<std::string> missing;
  auto require = [&](const std::string& name) {
    if (!fs::exists(dir / name)) missing.push_back(name);
  };
  std::map<std::string, bool> analyzed;
  for (const auto& a : analysis_docs) {
    analyzed[a.value("file", "")] = true;
    for (const auto& w : a["widths"]) {
      require(w.value("histogram", ""));
      require(w.value("curves", ""));
    }
    if (a.contains("subsets")) require(a["subsets"].value("table", ""));
    if (a.contains("primes")) require(a["primes"].value("table", ""));
  }
  for (const auto& b : build_docs)
    for (const auto& f : b["forms"]) require(f.value("file", ""));
  for (const auto& c : coeff_files)
    if (!analyzed.count(c.filename().string())) missing.push_back(c.filename().string() + " (not analyzed)");
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string msg = "missing inputs:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }

  std::ostringstream out;
  out << "status=ok\n";
  out << "builds=" << build_docs.size() << "\n";
  out << "analyses=" << analysis_docs.size() << "\n";

  if (!build_docs.empty()) {
    out << "\n== Lift certificates ==\n";
    out << "label\tdimension\tprecision\tt\tdepth\tcertified\tmax_discrepancy\n";
    for (const auto& b : build_docs)
      for (const auto& f : b["forms"])
        for (const auto& l : f["lifts"])
          out << f.value("label", "") << "\t" << b.value("dimension", 0) << "\t" << b.value("precision", 0) << "\t"
              << l.value("t", 0) << "\t" << l.value("depth", 0) << "\t" << (l.value("certified", false) ? "yes" : "no")
              << "\t" << l.value("max_abs_discrepancy", "") << "\n";
    out << "\n== Hecke eigenvalues T(p^2) ==\n";
    for (const auto& b : build_docs) {
      out << b.value("label", "") << "\tcharpoly(T9)=" << b.value("charpoly_T9", "");
      for (const auto& [p, v] : b["eigenvalues"].items()) out << "\tp=" << p << ":" << v.get<std::string>();
      out << "\n";
    }
  }

  if (!analysis_docs.empty()) {
    // Box-width table: GG a per form and width.
    std::vector<double> widths;
    for (const auto& a : analysis_docs)
      for (const auto& w : a["widths"]) {
        const double x = w["width"].get<double>();
        if (std::find(widths.begin(), widths.end(), x) == widths.end()) widths.push_back(x);
      }
    std::sort(widths.begin(), widths.end(), std::greater<>());
    out << "\n== GG parameter a by box width ==\nlabel";
    for (double w : widths) out << "\t" << width_tag(w);
    out << "\n";
    for (const auto& a : analysis_docs) {
      out << a.value("label", "");
      for (double w : widths) {
        std::string v = "-";
        for (const auto& wj : a["widths"])
          if (wj["width"].get<double>() == w) v = cell(wj["fits"], "GG", "a");
        out << "\t" << v;
      }
      out << "\n";
    }

    out << "\n== Best fit parameters (first width per form) ==\n";
    std::vector<std::string> rows;
    std::vector<json> fits;
    for (const auto& a : analysis_docs) {
      if (a["widths"].empty()) continue;
      rows.push_back(a.value("label", "") + "@" + width_tag(a["widths"][0]["width"].get<double>()));
      fits.push_back(a["widths"][0]["fits"]);
    }
    parameter_block(out, rows, fits);

    for (const auto& a : analysis_docs) {
      if (!a.contains("subsets")) continue;
      out << "\n== Consecutive subsets: " << a.value("label", "") << " (" << a["subsets"].value("count", 0)
          << " pieces, width " << width_tag(a["subsets"]["width"].get<double>()) << ") ==\n";
      std::vector<std::string> r;
      std::vector<json> f;
      for (const auto& row : a["subsets"]["rows"]) {
        r.push_back(std::to_string(row.value("index", 0)));
        f.push_back(row["fits"]);
      }
      parameter_block(out, r, f);
    }
    for (const auto& a : analysis_docs) {
      if (!a.contains("primes")) continue;
      out << "\n== Squarefree versus prime indices: " << a.value("label", "") << " ==\n";
      parameter_block(out, {"Sqfree", "Prime"}, {a["primes"]["squarefree"], a["primes"]["prime"]});
    }

    out << "\n== Signs ==\nlabel\tn_pos\tn_neg\tn_zero\tpos_fraction\n";
    for (const auto& a : analysis_docs) {
      const auto& s = a["signs"];
      out << a.value("label", "") << "\t" << s.value("n_pos", 0) << "\t" << s.value("n_neg", 0) << "\t"
          << s.value("n_zero", 0) << "\t" << (s["pos_fraction"].is_null() ? "-" : num(s["pos_fraction"].get<double>()))
          << "\n";
    }
    out << "\n== Independence ratios (95% Wilson) ==\nlabel\tinterval\ttrials\tratio\tlo\thi\tcontains_0.5\n";
    for (const auto& a : analysis_docs)
      for (const auto& r : a["independence"]) {
        out << a.value("label", "") << "\t[" << num(r["lo"].get<double>()) << "," << num(r["hi"].get<double>())
            << "]\t" << r.value("trials", 0);
        if (r.contains("ratio"))
          out << "\t" << num(r["ratio"].get<double>()) << "\t" << num(r["wilson_lo"].get<double>()) << "\t"
              << num(r["wilson_hi"].get<double>()) << "\t" << (r.value("contains_half", false) ? "yes" : "no");
        else
          out << "\t-\t-\t-\t-";
        out << "\n";
      }
    out << "\n== Kolmogorov-Smirnov distance to the fitted models ==\nlabel\twidth\tmodel\tdistance\n";
    for (const auto& a : analysis_docs)
      for (const auto& w : a["widths"])
        for (const auto& [m, d] : w["cdf_distance"].items())
          out << a.value("label", "") << "\t" << width_tag(w["width"].get<double>()) << "\t" << m << "\t"
              << (d.is_number() ? num(d.get<double>()) : d.get<std::string>()) << "\n";
  }
  stats::write_text(result.summary, out.str());

  // One page per histogram: boxes plus every fitted curve from the curve file.
  std::ostringstream gp;
  gp << "set terminal pngcairo size 1000,700\n";
  for (const auto& a : analysis_docs)
    for (const auto& w : a["widths"]) {
      const std::string hist = w.value("histogram", ""), curves = w.value("curves", "");
      std::string png = hist.substr(0, hist.size() - 5) + ".png";
      gp << "\nset output '" << png << "'\n";
      gp << "set title '" << a.value("label", "") << ", width " << width_tag(w["width"].get<double>()) << "'\n";
      gp << "plot '" << hist << "' using 1:2 with boxes title 'histogram'";
      int column = 2;
      for (const auto& f : w["fits"])
        if (f.contains("params")) gp << ", \\\n     '" << curves << "' using 1:" << column++ << " with lines title '" << f.value("model", "") << "'";
      gp << "\n";
    }
  stats::write_text(result.plots, gp.str());
  log << "wrote " << result.summary.string() << " and " << result.plots.string() << "\n";
  return result;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const CertificateError& e) {
    err << "certificate failure: " << e.what() << "\n";
    return kCertificateFailure;
  } catch (const FitFailure& e) {
    err << "fit failure: " << e.what() << "\n";
    return kFitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kOtherError;
  }
}

}  // namespace halfwt::cli
