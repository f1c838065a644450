#include "halfwt/stats/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace halfwt::stats {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

std::string format_histogram(const Histogram& h) {
  std::string out;
  for (const auto& [i, c] : h.bins) out += format_real(h.center(i)) + "\t" + std::to_string(c) + "\n";
  return out;
}

std::string format_fit(const FitResult& r) {
  std::string out = "model=" + to_string(r.model) + "\n";
  const auto& names = r.names();
  for (std::size_t i = 0; i < names.size(); ++i) out += "param." + names[i] + "=" + format_real(r.params[i]) + "\n";
  out += "ssr=" + format_real(r.ssr) + "\n";
  out += "rms=" + format_real(r.rms) + "\n";
  out += "iterations=" + std::to_string(r.iterations) + "\n";
  out += std::string("converged=") + (r.converged ? "true" : "false") + "\n";
  out += "n_points=" + std::to_string(r.n_points) + "\n";
  out += "n_params=" + std::to_string(r.n_params) + "\n";
  return out;
}

std::string gnuplot_expression(const FitResult& r) {
  const auto p = [&](std::size_t i) { return "(" + format_real(r.params[i]) + ")"; };
  switch (r.model) {
    case ModelTag::GGG: return p(1) + "*exp(-((" + p(3) + "+x**2)**" + p(0) + ")/" + p(2) + ")";
    case ModelTag::GG: return p(1) + "*exp(-((x**2)**" + p(0) + ")/" + p(2) + ")";
    case ModelTag::Laplace: return p(0) + "*exp(-abs(x)/" + p(1) + ")";
    case ModelTag::Cauchy: return p(0) + "/(" + p(1) + "+(" + p(2) + "*x)**2)";
  }
  return "0";
}

std::string plot_script(const std::string& title, const std::string& histogram_file,
                        const std::vector<FitResult>& fits) {
  std::string out;
  out += "set title \"" + title + "\"\n";
  out += "set xlabel \"normalized coefficient\"\n";
  out += "set ylabel \"count\"\n";
  out += "set style data boxes\n";
  out += "set style fill solid 0.3\n";
  out += "set samples 2000\n";
  out += "plot \"" + histogram_file + "\" using 1:2 title \"data\"";
  for (const auto& f : fits)
    out += ", \\\n     " + gnuplot_expression(f) + " with lines lw 2 title \"" + to_string(f.model) + "\"";
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace halfwt::stats
