// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criterion 10 runs only with HALFWT_EXTENDED=1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "halfwt/coeffs/normalize.hpp"
#include "halfwt/coeffs/sieve.hpp"
#include "halfwt/modforms/eigenforms.hpp"
#include "halfwt/modforms/plus_space.hpp"
#include "halfwt/shimura/lift.hpp"
#include "halfwt/stats/fit.hpp"
#include "halfwt/stats/histogram.hpp"
#include "halfwt/stats/signs.hpp"

using namespace halfwt;
using arith::Integer;
using arith::Rational;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  enum Status { Pass, Fail, Skip } status = Fail;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

constexpr std::size_t kDeskBound = 1000000;
const std::vector<double> kWidths{0.001, 0.0001, 0.00001};

// Shared state between criteria.
std::map<int, modforms::EigenSystem> g_systems;        // ell -> Hecke data (criterion 1)
std::map<int, coeffs::CoeffStream> g_streams;          // ell -> desk-scale stream (criterion 3)
std::vector<std::pair<std::string, stats::Histogram>> g_suite;  // fitted desk-scale histograms
std::vector<std::vector<stats::ModelFit>> g_suite_fits;

const std::vector<stats::ModelTag> kModels{stats::ModelTag::GGG, stats::ModelTag::GG, stats::ModelTag::Laplace,
                                           stats::ModelTag::Cauchy};

const std::vector<stats::ModelFit>& fit_suite(const std::string& name, const std::vector<double>& values, double w) {
  for (std::size_t i = 0; i < g_suite.size(); ++i)
    if (g_suite[i].first == name) return g_suite_fits[i];
  auto h = stats::histogram(values, w);
  g_suite_fits.push_back(stats::fit_models(h, kModels));
  g_suite.emplace_back(name, std::move(h));
  return g_suite_fits.back();
}

const stats::FitResult* find_fit(const std::vector<stats::ModelFit>& fits, stats::ModelTag m) {
  for (const auto& f : fits)
    if (f.model == m && f.result) return &*f.result;
  return nullptr;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto start = Clock::now();
  std::ostringstream bad;
  std::size_t weights = 0;
  for (int ell = 6; ell <= 30; ++ell) {
    const int dim = modforms::dim_cusp_forms(2 * ell);
    if (dim == 0) continue;
    ++weights;
    auto sys = modforms::eigen_system(ell);
    const auto forms = modforms::eigenforms_from_system(sys, 1001);
    if (static_cast<int>(forms.size()) != dim) bad << " " << 2 * ell + 1 << "/2:" << forms.size() << "!=" << dim;
    for (int j = 0; j < static_cast<int>(forms.size()); ++j) {
      const std::string want = modforms::form_label(ell, j + 1, dim);
      if (forms[static_cast<std::size_t>(j)].label != want) bad << " label " << forms[static_cast<std::size_t>(j)].label;
    }
    g_systems.emplace(ell, std::move(sys));
  }
  const std::map<int, int> expected{{6, 1}, {12, 2}, {17, 2}, {30, 5}};
  for (auto [ell, n] : expected)
    if (!g_systems.count(ell) || static_cast<int>(g_systems.at(ell).basis.dimension()) != n)
      bad << " expected " << n << " forms at " << 2 * ell + 1 << "/2";
  const double t = seconds_since(start);
  if (t >= 300) bad << " runtime " << t << " s";
  const std::string labels = g_systems.count(30) ? modforms::form_label(30, 1, 5) + ".." + modforms::form_label(30, 5, 5) : "";
  return {bad.str().empty() ? Outcome::Pass : Outcome::Fail,
          std::to_string(weights) + " weights, 61/2 labels " + labels + ", " + fmt("%.1f s", t) + bad.str()};
}

// tau(n), n < N, from Delta = (E4^3 - E6^2) / 1728 with E4, E6 from divisor sums.
std::vector<Integer> delta_oracle(std::size_t N) {
  auto sigma = [](unsigned k, std::size_t n) {
    Integer s = 0, p;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) {
        mpz_ui_pow_ui(p.get_mpz_t(), d, k);
        s += p;
      }
    return s;
  };
  std::vector<Integer> e4(N), e6(N);
  for (std::size_t n = 0; n < N; ++n) {
    e4[n] = n == 0 ? Integer(1) : 240 * sigma(3, n);
    e6[n] = n == 0 ? Integer(1) : -504 * sigma(5, n);
  }
  auto mul = [N](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> c(N, 0);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  const auto e43 = mul(mul(e4, e4), e4), e62 = mul(e6, e6);
  std::vector<Integer> tau(N);
  for (std::size_t n = 0; n < N; ++n) tau[n] = (e43[n] - e62[n]) / 1728;
  return tau;
}

Outcome criterion2() {
  const auto tau = delta_oracle(12);
  const auto sys = modforms::eigen_system(6, {3, 5, 7, 11});
  std::ostringstream detail;
  bool ok = true;
  for (int p : {3, 5, 7, 11}) {
    const auto& ev = sys.eigenvalues.at(p);
    const bool eq = ev.is_rational() && ev.coord(0) == Rational(tau[static_cast<std::size_t>(p)]);
    ok = ok && eq;
    detail << " T(" << p << "^2)=" << ev.to_string() << (eq ? "" : " != " + tau[static_cast<std::size_t>(p)].get_str());
  }
  return {ok ? Outcome::Pass : Outcome::Fail, detail.str().substr(1)};
}

// Lifts for 13/2 .. 29/2, one shared theta cache per parity. The 13/2,
// 17/2 and 21/2 expansions are also normalized to the desk bound here.
Outcome criterion3() {
  constexpr std::size_t depth = 500;
  const auto start = Clock::now();
  double lift_seconds = 0;
  std::ostringstream bad, info;
  std::size_t certificates = 0;
  for (int parity : {0, 1}) {
    std::vector<int> ells;
    for (int ell = 6; ell <= 14; ++ell)
      if (ell % 2 == parity && modforms::dim_cusp_forms(2 * ell) > 0) ells.push_back(ell);
    const auto section = Clock::now();
    std::map<int, std::vector<std::uint64_t>> ts;
    std::size_t N = kDeskBound + 1;
    for (int ell : ells) {
      const auto probe = modforms::eigenforms_from_system(g_systems.at(ell), 2000);
      ts[ell] = shimura::lift_parameters(probe.front(), 3);
      if (ts[ell].size() < 3) bad << " " << 2 * ell + 1 << "/2: only " << ts[ell].size() << " lift parameters";
      if (!ts[ell].empty()) N = std::max(N, shimura::lift_precision(ts[ell].back(), depth));
    }
    modforms::ThetaPowers cache(parity == 0 ? 1 : 3, N);
    double normalize_seconds = 0;
    for (int ell : ells) {
      const auto forms = modforms::eigenforms_from_system(g_systems.at(ell), N, &cache);
      for (const auto& f : forms) {
        const auto g = shimura::level1_partner(f, depth + 1);
        for (auto t : ts[ell]) {
          const auto r = shimura::verify_lift(f, g, t, depth);
          ++certificates;
          if (!r.certified()) bad << " " << f.label << " t=" << t << " mismatch at n=" << r.first_mismatch;
        }
      }
      info << " " << 2 * ell + 1 << "/2 t={";
      for (std::size_t i = 0; i < ts[ell].size(); ++i) info << (i ? "," : "") << ts[ell][i];
      info << "}";
      if (ell == 6 || ell == 8 || ell == 10) {
        const auto t0 = Clock::now();
        g_streams[ell] = coeffs::normalize(forms.front(), kDeskBound);
        normalize_seconds += seconds_since(t0);
      }
    }
    lift_seconds += seconds_since(section) - normalize_seconds;
  }
  if (lift_seconds >= 600) bad << " runtime " << lift_seconds << " s";
  return {bad.str().empty() ? Outcome::Pass : Outcome::Fail,
          std::to_string(certificates) + " certificates with zero discrepancy at depth 500," + info.str() + ", " +
              fmt("%.1f s", lift_seconds) + " (total incl. normalization " + fmt("%.1f s", seconds_since(start)) + ")" +
              bad.str()};
}

Outcome criterion4() {
  constexpr std::size_t X = 10000;
  std::size_t forms_checked = 0, violations = 0;
  std::ostringstream bad;
  for (const auto& [ell, sys] : g_systems) {
    const auto forms = modforms::eigenforms_from_system(sys, X + 1);
    forms_checked += forms.size();
    // The forms share one expansion over K, so checking the first covers all.
    const auto& f = forms.front();
    for (std::size_t n = 0; n <= X; ++n)
      if ((n == 0 || modforms::plus_forbidden(ell, n)) && !f.coefficient(n).is_zero()) {
        if (violations++ < 5) bad << " " << f.label << " a(" << n << ")";
      }
  }
  return {violations == 0 ? Outcome::Pass : Outcome::Fail,
          std::to_string(forms_checked) + " forms, n <= 10^4, " + std::to_string(violations) + " violations" + bad.str()};
}

Outcome criterion5() {
  struct Case {
    stats::ModelTag m;
    std::vector<double> p;
  };
  const std::vector<Case> cases{{stats::ModelTag::GGG, {0.622, 1.0e9, 0.967, 0.045}},
                                {stats::ModelTag::GG, {0.677, 1.0e9, 1.08}},
                                {stats::ModelTag::Laplace, {1.0e9, 0.908}},
                                {stats::ModelTag::Cauchy, {1.0e9, 0.14, 0.488}}};
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::ostringstream detail;
  bool ok = true;
  for (const auto& c : cases) {
    const double peak = stats::model_eval(c.m, c.p, 0.0);
    auto make = [&](double floor) {
      stats::Histogram h;
      h.width = 0.01;
      for (std::int64_t i = -400; i < 400; ++i) {
        const double y = stats::model_eval(c.m, c.p, h.center(i));
        if (y >= floor * peak && y >= 0.5) h.bins[i] = static_cast<std::uint64_t>(std::llround(y));
      }
      return h;
    };
    // Cauchy a/(b + (cx)^2) only determines a/b and c^2/b; any (ka, kb,
    // sqrt(k) c) is the same curve, so its recovery is judged on those two.
    auto identifiable = [&](const std::vector<double>& p) -> std::vector<double> {
      if (c.m != stats::ModelTag::Cauchy) return p;
      return {p[0] / p[1], p[2] * p[2] / p[1]};
    };
    auto rel = [&](const std::vector<double>& got) {
      const auto g = identifiable(got), w = identifiable(c.p);
      double e = 0;
      for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::fabs(g[i] - w[i]) / std::fabs(w[i]));
      return e;
    };
    const auto exact = stats::fit(c.m, make(0));
    const double e_exact = rel(exact.params);
    const bool pass_exact = exact.converged && e_exact < 1e-6 && exact.rms < 1e-8 * peak;

    auto noisy = make(0.1);
    std::normal_distribution<double> noise(0.0, 0.01 * peak);
    for (auto& [i, count] : noisy.bins)
      count = static_cast<std::uint64_t>(std::max(1.0, std::round(static_cast<double>(count) + noise(rng))));
    const auto r = stats::fit(c.m, noisy);
    const double e_noisy = rel(r.params);
    const bool pass_noisy = r.converged && e_noisy < 0.01;
    ok = ok && pass_exact && pass_noisy;
    // SSR at the fit over SSR at the generating parameters: <= 1 means the
    // optimizer found the least squares optimum even where it sits away from
    // the truth.
    const double ssr_ratio = r.ssr / stats::sum_squared_residuals(c.m, c.p, noisy);
    detail << " " << stats::to_string(c.m) << " exact " << fmt("%.1e", e_exact) << " noisy " << fmt("%.1e", e_noisy);
    if (!pass_noisy) {
      detail << " (per parameter";
      for (std::size_t i = 0; i < c.p.size() && c.m != stats::ModelTag::Cauchy; ++i)
        detail << " " << fmt("%.1e", std::fabs(r.params[i] - c.p[i]) / std::fabs(c.p[i]));
      detail << ", SSR fit/true " << fmt("%.4f", ssr_ratio) << ")";
    }
  }
  detail << ", " << fmt("%.1f s", seconds_since(start));
  return {ok ? Outcome::Pass : Outcome::Fail, detail.str().substr(1)};
}

Outcome criterion7() {
  if (!g_streams.count(6)) return {Outcome::Fail, "13/2 stream unavailable"};
  const auto values = g_streams.at(6).values();
  std::vector<double> a;
  std::ostringstream detail;
  for (double w : kWidths) {
    const auto* gg = find_fit(fit_suite("13/2 w=" + fmt("%g", w), values, w), stats::ModelTag::GG);
    if (!gg) return {Outcome::Fail, "GG fit failed at width " + fmt("%g", w)};
    a.push_back(gg->params[0]);
    detail << " w=" << fmt("%g", w) << ":a=" << fmt("%.4f", gg->params[0]);
  }
  const double spread = *std::max_element(a.begin(), a.end()) - *std::min_element(a.begin(), a.end());
  detail << ", spread " << fmt("%.4f", spread);
  return {spread < 0.005 ? Outcome::Pass : Outcome::Fail, detail.str().substr(1)};
}

Outcome criterion8() {
  std::ostringstream detail;
  bool ok = true;
  for (int ell : {6, 8, 10}) {
    if (!g_streams.count(ell)) return {Outcome::Fail, "stream unavailable"};
    const auto values = g_streams.at(ell).values();
    const auto r = stats::sign_report(values);
    const double f = r.pos_fraction.value_or(-1);
    ok = ok && f >= 0.49 && f <= 0.51;
    detail << " " << 2 * ell + 1 << "/2:" << fmt("%.4f", f) << " (n=" << r.n_pos + r.n_neg << ")";
    fit_suite(std::to_string(2 * ell + 1) + "/2 w=0.001", values, 0.001);
  }
  return {ok ? Outcome::Pass : Outcome::Fail, detail.str().substr(1)};
}

Outcome criterion9() {
  if (!g_streams.count(6)) return {Outcome::Fail, "13/2 stream unavailable"};
  const auto values = g_streams.at(6).values();
  std::ostringstream detail;
  bool ok = true;
  for (auto [lo, hi] : {std::pair{0.1, 0.5}, {0.5, 1.0}, {1.0, 2.0}}) {
    const auto p = stats::independence_ratio(values, lo, hi);
    const bool in = p && p->contains(0.5);
    ok = ok && in;
    detail << " [" << lo << "," << hi << "]:";
    if (p) detail << fmt("%.4f", p->ratio) << " CI [" << fmt("%.4f", p->lo) << "," << fmt("%.4f", p->hi) << "]";
    else detail << "no data";
  }
  return {ok ? Outcome::Pass : Outcome::Fail, detail.str().substr(1)};
}

Outcome criterion11() {
  if (!g_streams.count(6)) return {Outcome::Fail, "13/2 stream unavailable"};
  const auto pieces = coeffs::subset_split(g_streams.at(6), 4);
  std::vector<double> c;
  std::ostringstream detail;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto* lap =
        find_fit(fit_suite("13/2 subset " + std::to_string(i + 1), pieces[i].values(), 0.001), stats::ModelTag::Laplace);
    if (!lap) return {Outcome::Fail, "Laplace fit failed on subset " + std::to_string(i + 1)};
    c.push_back(lap->params[1]);
    detail << (i ? "," : "Laplace c: ") << fmt("%.4f", lap->params[1]);
  }
  bool ok = true;
  for (std::size_t i = 1; i < c.size(); ++i) ok = ok && c[i] <= c[i - 1];
  return {ok ? Outcome::Pass : Outcome::Fail, detail.str()};
}

// Runs after 7, 8, 11 so that it covers every histogram they fitted.
Outcome criterion6() {
  std::ostringstream bad;
  for (std::size_t i = 0; i < g_suite.size(); ++i) {
    const auto* ggg = find_fit(g_suite_fits[i], stats::ModelTag::GGG);
    const auto* gg = find_fit(g_suite_fits[i], stats::ModelTag::GG);
    const auto* lap = find_fit(g_suite_fits[i], stats::ModelTag::Laplace);
    if (!ggg || !gg || !lap) {
      bad << " " << g_suite[i].first << ": fit missing";
      continue;
    }
    if (ggg->ssr > gg->ssr * (1 + 1e-9) || gg->ssr > lap->ssr * (1 + 1e-9))
      bad << " " << g_suite[i].first << ": " << ggg->ssr << "," << gg->ssr << "," << lap->ssr;
  }
  const auto& first = g_suite_fits.empty() ? std::vector<stats::ModelFit>{} : g_suite_fits.front();
  std::ostringstream detail;
  detail << g_suite.size() << " histograms";
  if (const auto* r = find_fit(first, stats::ModelTag::GGG)) detail << ", 13/2 w=0.001 rms GGG " << fmt("%.2f", r->rms);
  if (const auto* r = find_fit(first, stats::ModelTag::GG)) detail << " GG " << fmt("%.2f", r->rms);
  if (const auto* r = find_fit(first, stats::ModelTag::Laplace)) detail << " Laplace " << fmt("%.2f", r->rms);
  if (g_suite.empty()) bad << " no histograms fitted";
  return {bad.str().empty() ? Outcome::Pass : Outcome::Fail, detail.str() + bad.str()};
}

Outcome criterion10() {
  const char* env = std::getenv("HALFWT_EXTENDED");
  if (!env || std::string(env) != "1") return {Outcome::Skip, "opt-in; set HALFWT_EXTENDED=1"};
  const auto start = Clock::now();
  constexpr std::size_t X = 10000000;
  const auto forms = modforms::eigenforms_from_system(g_systems.at(6), X + 1);
  const auto values = coeffs::normalize(forms.front(), X).values();
  const auto h = stats::histogram(values, 0.001);
  const auto fits = stats::fit_models(h, {stats::ModelTag::GGG, stats::ModelTag::GG, stats::ModelTag::Laplace});
  const auto* gg = find_fit(fits, stats::ModelTag::GG);
  const auto* ggg = find_fit(fits, stats::ModelTag::GGG);
  if (!gg || !ggg) return {Outcome::Fail, "fit failed"};
  auto within_abs = [](double x, double ref, double tol) { return std::fabs(x - ref) <= tol; };
  auto within_rel = [](double x, double ref, double tol) { return std::fabs(x - ref) <= tol * ref; };
  const auto& p = gg->params;
  const auto& q = ggg->params;
  const bool ok_gg = within_abs(p[0], 0.677, 0.02) && within_rel(p[1], 1038, 0.05) && within_abs(p[2], 1.08, 0.05);
  const bool ok_ggg = within_abs(q[0], 0.622, 0.02) && within_rel(q[1], 1177.4, 0.05) && within_abs(q[2], 0.967, 0.05) &&
                      within_abs(q[3], 0.045, 0.02);
  std::ostringstream detail;
  detail << "GG (" << fmt("%.3f", p[0]) << ", " << fmt("%.1f", p[1]) << ", " << fmt("%.3f", p[2]) << ") GGG ("
         << fmt("%.3f", q[0]) << ", " << fmt("%.1f", q[1]) << ", " << fmt("%.3f", q[2]) << ", " << fmt("%.3f", q[3])
         << "), " << values.size() << " values, " << fmt("%.0f s", seconds_since(start));
  return {ok_gg && ok_ggg ? Outcome::Pass : Outcome::Fail, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> order{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},  {7, criterion7},
      {8, criterion8}, {9, criterion9}, {11, criterion11}, {6, criterion6}, {10, criterion10}};
  // HALFWT_CRITERIA=5,7 runs a subset; the rest report SKIP.
  std::set<int> only;
  if (const char* env = std::getenv("HALFWT_CRITERIA")) {
    std::istringstream in(env);
    for (std::string tok; std::getline(in, tok, ',');) only.insert(std::stoi(tok));
  }
  std::map<int, Outcome> results;
  for (const auto& [id, run] : order) {
    Outcome o;
    if (!only.empty() && !only.count(id)) {
      results[id] = {Outcome::Skip, "not selected"};
      continue;
    }
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    results[id] = o;
    std::fprintf(stderr, "[criterion %d done]\n", id);
  }
  int failures = 0;
  for (const auto& [id, o] : results) {
    const char* tag = o.status == Outcome::Pass ? "PASS" : o.status == Outcome::Skip ? "SKIP" : "FAIL";
    if (o.status == Outcome::Fail) ++failures;
    std::printf("criterion %2d: %s  %s\n", id, tag, o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
