#include "halfwt/coeffs/stream.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "halfwt/coeffs/sieve.hpp"

namespace halfwt::coeffs {

std::vector<double> CoeffStream::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.b);
  return v;
}

std::string format_value(double b) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", b);
  return buf;
}

std::string format_stream(const CoeffStream& s) {
  std::string out;
  out.reserve(64 + 28 * s.entries.size());
  out += "# label=" + s.label + "\n";
  out += "# two_k=" + std::to_string(s.two_k) + "\n";
  out += "# ell=" + std::to_string(s.ell) + "\n";
  out += "# bound=" + std::to_string(s.bound) + "\n";
  out += "# count=" + std::to_string(s.entries.size()) + "\n";
  for (const auto& e : s.entries) {
    out += std::to_string(e.n);
    out += '\t';
    out += format_value(e.b);
    out += '\n';
  }
  return out;
}

namespace {

template <typename T>
T parse_int(std::string_view s, std::size_t line, const char* what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw StreamFormatError(std::string("bad ") + what + " '" + std::string(s) + "'", line);
  return v;
}

double parse_value(std::string_view s, std::size_t line) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::scientific);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty() || !std::isfinite(v))
    throw StreamFormatError("bad coefficient value '" + std::string(s) + "'", line);
  return v;
}

}  // namespace

CoeffStream parse_stream(const std::string& text) {
  CoeffStream s;
  std::size_t count = 0;
  const char* keys[] = {"label", "two_k", "ell", "bound", "count"};
  std::size_t line_no = 0, pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    line = std::string_view(text).substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  for (const char* key : keys) {
    if (!next_line(line)) throw StreamFormatError(std::string("missing header '") + key + "'", line_no + 1);
    const std::string prefix = std::string("# ") + key + "=";
    if (line.substr(0, prefix.size()) != prefix)
      throw StreamFormatError(std::string("expected header '") + key + "'", line_no);
    const std::string_view value = line.substr(prefix.size());
    if (key == keys[0]) s.label = std::string(value);
    else if (key == keys[1]) s.two_k = parse_int<int>(value, line_no, "two_k");
    else if (key == keys[2]) s.ell = parse_int<int>(value, line_no, "ell");
    else if (key == keys[3]) s.bound = parse_int<std::uint64_t>(value, line_no, "bound");
    else count = parse_int<std::size_t>(value, line_no, "count");
  }

  while (next_line(line)) {
    if (line.empty() && pos >= text.size()) break;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw StreamFormatError("expected 'index<TAB>value'", line_no);
    CoeffEntry e;
    e.n = parse_int<std::uint64_t>(line.substr(0, tab), line_no, "index");
    e.b = parse_value(line.substr(tab + 1), line_no);
    s.entries.push_back(e);
  }
  if (s.entries.size() != count)
    throw StreamFormatError("header count " + std::to_string(count) + " but " + std::to_string(s.entries.size()) +
                                " body lines",
                            0);
  return s;
}

void write_stream(const CoeffStream& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string text = format_stream(s);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

CoeffStream read_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_stream(ss.str());
  } catch (const StreamFormatError& e) {
    throw StreamFormatError(path.string() + ": " + e.what(), 0);
  }
}

void validate(const CoeffStream& s) {
  const auto fail = [&](const std::string& what) { throw std::invalid_argument(s.label + ": " + what); };
  if (s.two_k != 2 * s.ell + 1) fail("two_k != 2 ell + 1");
  const std::uint64_t residue = recorded_residue(s.ell);
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto n = s.entries[i].n;
    if (n > s.bound) fail("index " + std::to_string(n) + " exceeds bound");
    if (n % 4 != residue) fail("index " + std::to_string(n) + " outside the recorded residue class");
    if (!is_squarefree(n)) fail("index " + std::to_string(n) + " is not squarefree");
    if (i > 0 && n <= s.entries[i - 1].n) fail("indices not strictly increasing at " + std::to_string(n));
  }
  if (!s.entries.empty() && s.entries.front().b != 1.0) fail("first value is not 1");
}

std::vector<CoeffStream> subset_split(const CoeffStream& s, std::size_t S) {
  if (S == 0) throw std::invalid_argument("subset_split: S must be positive");
  std::vector<CoeffStream> out;
  const std::size_t total = s.entries.size(), base = total / S, extra = total % S;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < S; ++i) {
    CoeffStream part;
    part.label = s.label;
    part.two_k = s.two_k;
    part.ell = s.ell;
    part.bound = s.bound;
    const std::size_t len = base + (i < extra ? 1 : 0);
    part.entries.assign(s.entries.begin() + static_cast<std::ptrdiff_t>(pos),
                        s.entries.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    out.push_back(std::move(part));
  }
  return out;
}

CoeffStream prime_filter(const CoeffStream& s) {
  CoeffStream out = s;
  out.entries.clear();
  for (const auto& e : s.entries)
    if (is_prime(e.n)) out.entries.push_back(e);
  return out;
}

}  // namespace halfwt::coeffs
