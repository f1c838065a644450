#include "halfwt/cli/config.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>

namespace halfwt::cli {

void validate_build(const RunConfig& c) {
  if (c.two_k % 2 == 0) throw ConfigError("weight numerator must be odd, got " + std::to_string(c.two_k));
  if (c.two_k < 13 || c.two_k > 61)
    throw ConfigError("weight numerator must lie in 13..61, got " + std::to_string(c.two_k));
  if (c.two_k == 15) throw ConfigError("weight 15/2 has no cusp forms in the plus space (dim S_14 = 0)");
  if (c.bound < 100) throw ConfigError("bound must be at least 100, got " + std::to_string(c.bound));
  if (c.lift_depth < 1) throw ConfigError("lift depth must be positive");
  if (c.lift_count < 1) throw ConfigError("lift count must be positive");
  validate_common(c);
}

void validate_common(const RunConfig& c) {
  if (c.widths.empty()) throw ConfigError("at least one box width is required");
  for (double w : c.widths)
    if (!(w > 0) || !std::isfinite(w)) throw ConfigError("box widths must be positive");
  if (c.models.empty()) throw ConfigError("at least one model is required");
  if (c.subsets < 1) throw ConfigError("subset count must be at least 1");
  if (c.threads < 1) throw ConfigError("thread count must be at least 1");
  for (const auto& i : c.intervals)
    if (!(i.lo > 0) || !(i.lo <= i.hi)) throw ConfigError("intervals need 0 < lo <= hi");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("bad " + what + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_widths(const std::string& csv) {
  std::vector<double> out;
  for (const auto& item : split(csv, ',')) out.push_back(parse_double(item, "width"));
  return out;
}

std::vector<stats::ModelTag> parse_models(const std::string& csv) {
  std::vector<stats::ModelTag> out;
  for (const auto& item : split(csv, ',')) {
    try {
      const auto m = stats::parse_model(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

SignInterval parse_interval(const std::string& s) {
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  const auto parts = split(s, sep);
  if (parts.size() != 2) throw ConfigError("interval must look like lo:hi, got '" + s + "'");
  SignInterval i{parse_double(parts[0], "interval bound"), parse_double(parts[1], "interval bound")};
  if (!(i.lo > 0) || !(i.lo <= i.hi)) throw ConfigError("interval needs 0 < lo <= hi, got '" + s + "'");
  return i;
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (c == '/' || c == '(') out += '_';
    else if (c != ')') out += c;
  }
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace halfwt::cli
