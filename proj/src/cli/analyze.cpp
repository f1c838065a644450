#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "halfwt/cli/commands.hpp"
#include "halfwt/coeffs/sieve.hpp"
#include "halfwt/stats/cdf.hpp"
#include "halfwt/stats/export.hpp"
#include "halfwt/stats/signs.hpp"

namespace halfwt::cli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string width_tag(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", w);
  return buf;
}

namespace {

constexpr int kCurveSamples = 400;

// One histogram to fit; results land in `fits` by job index.
struct FitJob {
  std::size_t file = 0;
  std::vector<double> values;
  double width = 0;
  stats::Histogram hist;
  std::vector<stats::ModelFit> fits;
};

ordered_json fit_json(const stats::ModelFit& f) {
  ordered_json j;
  j["model"] = stats::to_string(f.model);
  if (!f.result) {
    j["error"] = f.error;
    return j;
  }
  const auto& r = *f.result;
  ordered_json params = ordered_json::object();
  for (std::size_t i = 0; i < r.params.size(); ++i) params[r.names()[i]] = r.params[i];
  j["params"] = params;
  j["ssr"] = r.ssr;
  j["rms"] = r.rms;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["n_points"] = r.n_points;
  return j;
}

std::string fits_text(const std::vector<stats::ModelFit>& fits) {
  std::string out;
  for (const auto& f : fits) {
    if (!out.empty()) out += "\n";
    if (f.result) out += stats::format_fit(*f.result);
    else out += "model=" + stats::to_string(f.model) + "\nerror=" + f.error + "\n";
  }
  return out;
}

// x followed by one column per converged fit, sampled across the histogram.
std::string curves_text(const stats::Histogram& h, const std::vector<stats::ModelFit>& fits) {
  std::ostringstream out;
  out << "x";
  std::vector<const stats::FitResult*> ok;
  for (const auto& f : fits)
    if (f.result) {
      ok.push_back(&*f.result);
      out << "\t" << stats::to_string(f.model);
    }
  out << "\n";
  if (h.bins.empty()) return out.str();
  const double lo = h.center(h.bins.begin()->first), hi = h.center(h.bins.rbegin()->first);
  for (int i = 0; i <= kCurveSamples; ++i) {
    const double x = lo + (hi - lo) * i / kCurveSamples;
    out << stats::format_real(x);
    for (const auto* r : ok) out << "\t" << stats::format_real(stats::model_eval(r->model, r->params, x));
    out << "\n";
  }
  return out.str();
}

// Table layout: one row per data set, the parameters of every
// requested model, then a separate RMS block.
std::string parameter_table(const std::vector<std::string>& rows, const std::vector<const std::vector<stats::ModelFit>*>& fits,
                            const std::vector<stats::ModelTag>& models) {
  auto cell = [](const stats::ModelFit* f, std::size_t i) -> std::string {
    if (!f || !f->result) return "-";
    return stats::format_real(f->result->params[i]);
  };
  auto find = [](const std::vector<stats::ModelFit>& v, stats::ModelTag m) -> const stats::ModelFit* {
    for (const auto& f : v)
      if (f.model == m) return &f;
    return nullptr;
  };
  std::ostringstream out;
  out << "set";
  for (auto m : models)
    for (const auto& n : stats::parameter_names(m)) out << "\t" << stats::to_string(m) << "." << n;
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r];
    for (auto m : models) {
      const auto* f = find(*fits[r], m);
      for (std::size_t i = 0; i < stats::parameter_count(m); ++i) out << "\t" << cell(f, i);
    }
    out << "\n";
  }
  out << "\nset";
  for (auto m : models) out << "\trms." << stats::to_string(m);
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r];
    for (auto m : models) {
      const auto* f = find(*fits[r], m);
      out << "\t" << (f && f->result ? stats::format_real(f->result->rms) : "-");
    }
    out << "\n";
  }
  return out.str();
}

void collect_failures(const std::string& what, const std::vector<stats::ModelFit>& fits, std::vector<std::string>& out) {
  for (const auto& f : fits) {
    if (!f.result) out.push_back(what + " model=" + stats::to_string(f.model) + ": " + f.error);
    else if (!f.result->converged)
      out.push_back(what + " model=" + stats::to_string(f.model) + ": no convergence after " +
                    std::to_string(f.result->iterations) + " iterations");
  }
}

std::vector<stats::ModelTag> canonical_order(const std::vector<stats::ModelTag>& models) {
  std::vector<stats::ModelTag> out;
  for (auto m : stats::kAllModels)
    if (std::find(models.begin(), models.end(), m) != models.end()) out.push_back(m);
  return out;
}

}  // namespace

AnalyzeResult cmd_analyze(const RunConfig& cfg, std::vector<fs::path> files, std::ostream& log) {
  validate_common(cfg);
  if (files.empty()) {
    if (!fs::is_directory(cfg.out)) throw ConfigError("no coefficient files given and " + cfg.out.string() + " is not a directory");
    for (const auto& e : fs::directory_iterator(cfg.out))
      if (e.is_regular_file() && e.path().extension() == ".coeffs") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no .coeffs files in " + cfg.out.string());
  }
  std::vector<std::string> missing;
  for (const auto& f : files)
    if (!fs::is_regular_file(f)) missing.push_back(f.string());
  if (!missing.empty()) {
    std::string msg = "missing coefficient files:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }
  fs::create_directories(cfg.out);
  const auto models = canonical_order(cfg.models);

  std::vector<coeffs::CoeffStream> streams;
  for (const auto& f : files) {
    try {
      streams.push_back(coeffs::read_stream(f));
      coeffs::validate(streams.back());
    } catch (const coeffs::StreamFormatError& e) {
      throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(f.string() + ": " + e.what());
    }
  }

  // Jobs: every width per file, then the subsets and the prime comparison at
  // the first width.
  std::vector<FitJob> jobs;
  struct FileJobs {
    std::vector<std::size_t> widths, subsets;
    std::vector<coeffs::CoeffStream> pieces;
    std::optional<std::size_t> primes;
    coeffs::CoeffStream prime_stream;
  };
  std::vector<FileJobs> index(streams.size());
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const auto values = streams[i].values();
    for (double w : cfg.widths) {
      index[i].widths.push_back(jobs.size());
      jobs.push_back({i, values, w, {}, {}});
    }
    if (cfg.subsets > 1) {
      index[i].pieces = coeffs::subset_split(streams[i], cfg.subsets);
      for (const auto& p : index[i].pieces) {
        index[i].subsets.push_back(jobs.size());
        jobs.push_back({i, p.values(), cfg.widths.front(), {}, {}});
      }
    }
    if (cfg.prime_only) {
      index[i].prime_stream = coeffs::prime_filter(streams[i]);
      index[i].primes = jobs.size();
      jobs.push_back({i, index[i].prime_stream.values(), cfg.widths.front(), {}, {}});
    }
  }
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
    auto& job = jobs[j];
    if (job.values.empty()) {
      for (auto m : models) job.fits.push_back({m, std::nullopt, "no data"});
      return;
    }
    job.hist = stats::histogram(job.values, job.width);
    stats::FitOptions opt;
    opt.fill_empty = !cfg.nonempty_only;
    job.fits = stats::fit_models(job.hist, models, opt);
  });

  AnalyzeResult result;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const auto& s = streams[i];
    const std::string stem = file_stem(s.label);
    const auto values = s.values();
    ordered_json doc;
    doc["label"] = s.label;
    doc["file"] = files[i].filename().string();
    doc["two_k"] = s.two_k;
    doc["bound"] = s.bound;
    doc["count"] = s.entries.size();
    doc["empty_bins_fitted"] = !cfg.nonempty_only;

    doc["widths"] = ordered_json::array();
    for (std::size_t k = 0; k < cfg.widths.size(); ++k) {
      const auto& job = jobs[index[i].widths[k]];
      const std::string base = stem + "_w" + width_tag(job.width);
      const fs::path hist = cfg.out / (base + ".hist"), fits = cfg.out / (base + ".fits"),
                     curves = cfg.out / (base + ".curves"), plot = cfg.out / (base + ".gp");
      stats::write_text(hist, stats::format_histogram(job.hist));
      stats::write_text(fits, fits_text(job.fits));
      stats::write_text(curves, curves_text(job.hist, job.fits));
      std::vector<stats::FitResult> ok;
      for (const auto& f : job.fits)
        if (f.result) ok.push_back(*f.result);
      stats::write_text(plot, stats::plot_script(s.label + ", width " + width_tag(job.width), hist.filename().string(), ok));
      for (const auto& p : {hist, fits, curves, plot}) result.outputs.push_back(p);

      ordered_json w;
      w["width"] = job.width;
      w["histogram"] = hist.filename().string();
      w["curves"] = curves.filename().string();
      w["bins"] = job.hist.bins.size();
      w["fits"] = ordered_json::array();
      ordered_json ks = ordered_json::object();
      for (const auto& f : job.fits) {
        w["fits"].push_back(fit_json(f));
        if (!f.result) continue;
        try {
          ks[stats::to_string(f.model)] = stats::cdf_distance(values, *f.result);
        } catch (const stats::NormalizationDomainError& e) {
          ks[stats::to_string(f.model)] = std::string("undefined: ") + e.what();
        }
      }
      w["cdf_distance"] = ks;
      doc["widths"].push_back(w);
      collect_failures(s.label + " width=" + width_tag(job.width), job.fits, result.fit_failures);
    }

    if (cfg.subsets > 1) {
      std::vector<std::string> rows;
      std::vector<const std::vector<stats::ModelFit>*> fits;
      ordered_json sub;
      sub["count"] = cfg.subsets;
      sub["width"] = cfg.widths.front();
      sub["rows"] = ordered_json::array();
      for (std::size_t k = 0; k < index[i].subsets.size(); ++k) {
        const auto& job = jobs[index[i].subsets[k]];
        const auto& piece = index[i].pieces[k];
        rows.push_back(std::to_string(k + 1));
        fits.push_back(&job.fits);
        ordered_json row;
        row["index"] = k + 1;
        row["size"] = piece.entries.size();
        row["first_n"] = piece.entries.empty() ? 0 : piece.entries.front().n;
        row["last_n"] = piece.entries.empty() ? 0 : piece.entries.back().n;
        row["fits"] = ordered_json::array();
        for (const auto& f : job.fits) row["fits"].push_back(fit_json(f));
        sub["rows"].push_back(row);
        collect_failures(s.label + " subset=" + std::to_string(k + 1), job.fits, result.fit_failures);
      }
      const fs::path table = cfg.out / (stem + ".subsets.tsv");
      stats::write_text(table, parameter_table(rows, fits, models));
      result.outputs.push_back(table);
      sub["table"] = table.filename().string();
      doc["subsets"] = sub;
    }

    if (index[i].primes) {
      const auto& sq = jobs[index[i].widths.front()];
      const auto& pr = jobs[*index[i].primes];
      const fs::path table = cfg.out / (stem + ".primes.tsv");
      stats::write_text(table, parameter_table({"Sqfree", "Prime"}, {&sq.fits, &pr.fits}, models));
      result.outputs.push_back(table);
      ordered_json p;
      p["width"] = cfg.widths.front();
      p["prime_count"] = index[i].prime_stream.entries.size();
      p["squarefree"] = ordered_json::array();
      p["prime"] = ordered_json::array();
      for (const auto& f : sq.fits) p["squarefree"].push_back(fit_json(f));
      for (const auto& f : pr.fits) p["prime"].push_back(fit_json(f));
      p["table"] = table.filename().string();
      doc["primes"] = p;
      collect_failures(s.label + " primes", pr.fits, result.fit_failures);
    }

    const auto signs = stats::sign_report(values);
    ordered_json sj;
    sj["n_pos"] = signs.n_pos;
    sj["n_neg"] = signs.n_neg;
    sj["n_zero"] = signs.n_zero;
    sj["pos_fraction"] = signs.pos_fraction ? ordered_json(*signs.pos_fraction) : ordered_json(nullptr);
    doc["signs"] = sj;

    doc["independence"] = ordered_json::array();
    for (const auto& iv : cfg.intervals) {
      ordered_json r;
      r["lo"] = iv.lo;
      r["hi"] = iv.hi;
      if (const auto p = stats::independence_ratio(values, iv.lo, iv.hi)) {
        r["successes"] = p->successes;
        r["trials"] = p->trials;
        r["ratio"] = p->ratio;
        r["wilson_lo"] = p->lo;
        r["wilson_hi"] = p->hi;
        r["contains_half"] = p->contains(0.5);
      } else {
        r["trials"] = 0;
      }
      doc["independence"].push_back(r);
    }

    const fs::path out = cfg.out / (stem + ".analysis.json");
    stats::write_text(out, doc.dump(2) + "\n");
    result.outputs.push_back(out);
    log << "analyzed " << s.label << ": " << s.entries.size() << " values -> " << out.string() << "\n";
  }
  return result;
}

}  // namespace halfwt::cli
