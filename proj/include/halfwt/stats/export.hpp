#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "halfwt/stats/fit.hpp"

namespace halfwt::stats {

/// "center<TAB>count" per stored bin, ascending.
std::string format_histogram(const Histogram& h);

/// Ten significant digits, scientific notation ("%.9e").
std::string format_real(double x);

/// Structured text block for one fit:
///   model=GG
///   param.a=6.770000000e-01
///   ...
///   ssr=..., rms=..., iterations=..., converged=true, n_points=..., n_params=...
std::string format_fit(const FitResult& r);

/// Gnuplot script plotting `histogram_file` with the fitted curves overlaid.
std::string plot_script(const std::string& title, const std::string& histogram_file,
                        const std::vector<FitResult>& fits);

/// Gnuplot expression of the model with the fitted parameters substituted.
std::string gnuplot_expression(const FitResult& r);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace halfwt::stats
