#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfwt::coeffs {

struct CoeffEntry {
  std::uint64_t n = 0;
  double b = 0;

  bool operator==(const CoeffEntry&) const = default;
};

/// Normalized coefficients b(n) at the recorded indices n <= bound.
struct CoeffStream {
  std::string label;
  int two_k = 0;
  int ell = 0;
  std::uint64_t bound = 0;
  std::vector<CoeffEntry> entries;

  std::vector<double> values() const;
  bool operator==(const CoeffStream&) const = default;
};

class StreamFormatError : public std::runtime_error {
 public:
  StreamFormatError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Ten significant digits, scientific, lowercase e: "-1.234567890e-01".
std::string format_value(double b);

/// Header "# key=value" lines, then "n<TAB>b" per entry.
std::string format_stream(const CoeffStream& s);
CoeffStream parse_stream(const std::string& text);

void write_stream(const CoeffStream& s, const std::filesystem::path& path);
CoeffStream read_stream(const std::filesystem::path& path);

/// Throws std::invalid_argument naming the first violated invariant
/// (squarefree, residue class, bound, strictly increasing, first b = 1).
void validate(const CoeffStream& s);

/// S consecutive pieces, sizes as equal as possible, longer pieces first.
std::vector<CoeffStream> subset_split(const CoeffStream& s, std::size_t S);

/// Entries at prime n only; values untouched.
CoeffStream prime_filter(const CoeffStream& s);

}  // namespace halfwt::coeffs
