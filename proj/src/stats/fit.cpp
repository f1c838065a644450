#include "halfwt/stats/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

namespace halfwt::stats {

double FitResult::param(const std::string& name) const {
  const auto& n = names();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == name) return params.at(i);
  throw std::out_of_range(to_string(model) + " has no parameter '" + name + "'");
}

namespace {

struct Points {
  std::vector<double> x, y;
};

Points points_of(const Histogram& h, bool fill_empty) {
  Points p;
  if (fill_empty && !h.bins.empty()) {
    const std::int64_t lo = h.bins.begin()->first, hi = h.bins.rbegin()->first;
    p.x.reserve(static_cast<std::size_t>(hi - lo + 1));
    p.y.reserve(static_cast<std::size_t>(hi - lo + 1));
    auto it = h.bins.begin();
    for (std::int64_t i = lo; i <= hi; ++i) {
      p.x.push_back(h.center(i));
      if (it != h.bins.end() && it->first == i) {
        p.y.push_back(static_cast<double>(it->second));
        ++it;
      } else {
        p.y.push_back(0);
      }
    }
    return p;
  }
  for (const auto& [i, c] : h.bins) {
    p.x.push_back(h.center(i));
    p.y.push_back(static_cast<double>(c));
  }
  return p;
}

// Indices of parameters optimized through their logarithm.
std::vector<std::size_t> log_params(ModelTag m) {
  switch (m) {
    case ModelTag::GGG:
    case ModelTag::GG: return {1, 2};
    case ModelTag::Laplace: return {0, 1};
    case ModelTag::Cauchy: return {};
  }
  return {};
}

Eigen::VectorXd to_internal(ModelTag m, const std::vector<double>& p) {
  Eigen::VectorXd q(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<Eigen::Index>(i)] = p[i];
  for (std::size_t i : log_params(m)) {
    if (!(p[i] > 0))
      throw FitError(to_string(m) + " initial " + parameter_names(m)[i] + " must be positive");
    q[static_cast<Eigen::Index>(i)] = std::log(p[i]);
  }
  return q;
}

std::vector<double> to_external(ModelTag m, const Eigen::VectorXd& q) {
  std::vector<double> p(q.data(), q.data() + q.size());
  for (std::size_t i : log_params(m)) p[i] = std::exp(p[i]);
  return p;
}

// Residuals count - model(center); false if any value is non-finite or
// outside the model domain.
bool residuals(ModelTag m, const Eigen::VectorXd& q, const Points& pts, Eigen::VectorXd& r) {
  const auto p = to_external(m, q);
  for (double v : p)
    if (!std::isfinite(v)) return false;
  r.resize(static_cast<Eigen::Index>(pts.x.size()));
  try {
    for (std::size_t k = 0; k < pts.x.size(); ++k) {
      const double f = model_eval(m, p, pts.x[k]);
      if (!std::isfinite(f)) return false;
      r[static_cast<Eigen::Index>(k)] = pts.y[k] - f;
    }
  } catch (const ModelDomainError&) {
    return false;
  }
  return true;
}

}  // namespace

std::vector<double> default_initial(ModelTag m, const Histogram& h) {
  if (h.bins.empty()) throw FitError("empty histogram");
  double peak = 0, peak_x = 0, total = 0, abs_sum = 0;
  for (const auto& [i, c] : h.bins) {
    const double x = h.center(i), y = static_cast<double>(c);
    if (y > peak) {
      peak = y;
      peak_x = x;
    }
    total += y;
    abs_sum += y * std::fabs(x);
  }
  const double mean_abs = std::max(abs_sum / total, h.width / 2);
  switch (m) {
    case ModelTag::GGG: return {0.5, peak, mean_abs, 0.01};
    case ModelTag::GG: return {0.5, peak, mean_abs};
    case ModelTag::Laplace: return {peak, mean_abs};
    case ModelTag::Cauchy: {
      double half = h.width / 2;
      for (const auto& [i, c] : h.bins)
        if (2.0 * static_cast<double>(c) >= peak) half = std::max(half, std::fabs(h.center(i) - peak_x));
      return {peak * half * half, half * half, 1.0};
    }
  }
  return {};
}

double sum_squared_residuals(ModelTag m, const std::vector<double>& params, const Histogram& h) {
  double s = 0;
  for (const auto& [i, c] : h.bins) {
    const double r = static_cast<double>(c) - model_eval(m, params, h.center(i));
    s += r * r;
  }
  return s;
}

double rms(double ssr, std::size_t n_points, std::size_t n_params) {
  if (n_points <= n_params)
    throw FitError("rms needs more points (" + std::to_string(n_points) + ") than parameters (" +
                   std::to_string(n_params) + ")");
  return std::sqrt(ssr / static_cast<double>(n_points - n_params));
}

double rms(const FitResult& r) { return rms(r.ssr, r.n_points, r.n_params); }

FitResult fit(ModelTag m, const Histogram& h, const std::optional<std::vector<double>>& init, const FitOptions& opt) {
  const std::size_t k = parameter_count(m);
  const Points pts = points_of(h, opt.fill_empty);
  if (pts.x.size() <= k)
    throw FitError(to_string(m) + ": " + std::to_string(pts.x.size()) + " nonempty bins for " + std::to_string(k) +
                   " parameters");
  const std::vector<double> start = init ? *init : default_initial(m, h);
  if (start.size() != k) throw FitError(to_string(m) + ": wrong number of initial parameters");

  Eigen::VectorXd q = to_internal(m, start), r;
  if (!residuals(m, q, pts, r)) throw FitError(to_string(m) + ": model not finite at the initial parameters");
  double S = r.squaredNorm();

  const Eigen::Index n = static_cast<Eigen::Index>(pts.x.size()), kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd J(n, kk);
  Eigen::VectorXd rp, rm, trial_r;
  double lambda = opt.lambda0;
  bool converged = S == 0;
  int iter = 0;
  bool need_jacobian = true;
  Eigen::MatrixXd A;
  Eigen::VectorXd g;

  while (!converged && iter < opt.max_iterations) {
    ++iter;
    if (need_jacobian) {
      // Central differences of the model, i.e. of -r; one sided when q sits
      // within a step of the domain boundary (GGG with d near -min x^2).
      for (Eigen::Index j = 0; j < kk; ++j) {
        const double step = std::max(1e-6, 1e-6 * std::fabs(q[j]));
        Eigen::VectorXd qp = q, qm = q;
        qp[j] += step;
        qm[j] -= step;
        const bool up = residuals(m, qp, pts, rp), down = residuals(m, qm, pts, rm);
        if (up && down)
          J.col(j) = (rm - rp) / (2 * step);
        else if (up)
          J.col(j) = (r - rp) / step;
        else if (down)
          J.col(j) = (rm - r) / step;
        else
          throw FitError(to_string(m) + ": model not finite while differentiating");
      }
      A = J.transpose() * J;
      g = J.transpose() * r;
      need_jacobian = false;
    }

    Eigen::VectorXd diag = A.diagonal();
    const double floor = std::max(1e-300, 1e-12 * diag.maxCoeff());
    for (Eigen::Index j = 0; j < kk; ++j) diag[j] = std::max(diag[j], floor);
    Eigen::MatrixXd damped = A;
    damped.diagonal() += lambda * diag;
    Eigen::VectorXd delta = damped.ldlt().solve(g);
    if (!delta.allFinite()) delta = damped.colPivHouseholderQr().solve(g);

    Eigen::VectorXd trial;
    int failures = 0;
    for (;;) {
      trial = q + delta;
      if (delta.allFinite() && residuals(m, trial, pts, trial_r)) break;
      if (++failures >= 20) throw FitError(to_string(m) + ": 20 consecutive non-finite trial steps");
      delta /= 2;
    }
    const double S_trial = trial_r.squaredNorm();
    if (S_trial < S) {
      const double decrease = (S - S_trial) / S;
      q = trial;
      r = trial_r;
      S = S_trial;
      lambda /= 10;
      need_jacobian = true;
      if (decrease < opt.tolerance || S == 0) converged = true;
    } else {
      lambda *= 10;
      // No representable improvement left along any damped direction.
      if (lambda > 1e16) converged = true;
    }
  }

  FitResult out;
  out.model = m;
  out.params = to_external(m, q);
  out.ssr = S;
  out.iterations = iter;
  out.converged = converged;
  out.n_points = pts.x.size();
  out.n_params = k;
  out.rms = rms(S, out.n_points, k);
  return out;
}

std::vector<ModelFit> fit_models(const Histogram& h, const std::vector<ModelTag>& models, const FitOptions& opt) {
  std::map<ModelTag, ModelFit> done;
  auto attempt = [&](ModelTag m, const std::optional<std::vector<double>>& init) -> std::optional<FitResult> {
    try {
      return fit(m, h, init, opt);
    } catch (const FitError& e) {
      if (!done.count(m) || done[m].error.empty()) done[m].error = e.what();
      return std::nullopt;
    }
  };
  auto better = [](std::optional<FitResult> a, std::optional<FitResult> b) {
    if (!a) return b;
    if (!b) return a;
    return b->ssr <= a->ssr ? b : a;
  };
  auto run = [&](ModelTag m, std::optional<std::vector<double>> warm) {
    done[m].model = m;
    auto res = attempt(m, std::nullopt);
    if (warm) res = better(res, attempt(m, warm));
    done[m].result = res;
    if (res) done[m].error.clear();
  };

  const auto wants = [&](ModelTag m) { return std::find(models.begin(), models.end(), m) != models.end(); };
  const bool need_gg = wants(ModelTag::GG) || wants(ModelTag::GGG);
  const bool need_laplace = need_gg || wants(ModelTag::Laplace);
  if (need_laplace) run(ModelTag::Laplace, std::nullopt);
  if (need_gg) {
    std::optional<std::vector<double>> warm;
    if (const auto& l = done[ModelTag::Laplace].result) warm = std::vector<double>{0.5, l->params[0], l->params[1]};
    run(ModelTag::GG, warm);
  }
  if (wants(ModelTag::GGG)) {
    std::optional<std::vector<double>> warm;
    if (const auto& g = done[ModelTag::GG].result) warm = std::vector<double>{g->params[0], g->params[1], g->params[2], 0.0};
    run(ModelTag::GGG, warm);
  }
  if (wants(ModelTag::Cauchy)) run(ModelTag::Cauchy, std::nullopt);

  std::vector<ModelFit> out;
  for (ModelTag m : models) out.push_back(done.at(m));
  return out;
}

}  // namespace halfwt::stats
