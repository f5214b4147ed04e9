#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace widths_cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitResource = 3;

/// Bad flag value or combination; reported with the list of valid names.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;

  std::string family = "mixed-inf";
  double s = 1.0;
  double r = 2.0;
  int d = 1;

  std::string n;       // "7", "1..12", "1..100:3", "1e4,1e5,1e6"
  std::string r_grid;  // same syntax

  std::string embedding = "a-to-a";
  std::string kind = "approximation";
  double p = 0.0;

  double alpha = 1.0;
  double beta = 0.0;
  double target = 0.0;

  std::string name;  // constants

  std::string quantity = "C";  // count: C | A | A-split
  int ell = 1;
  int j = 0;
  std::int64_t r_ell = 0;  // 0: max(1, floor(r^lambda_ell))

  double a = 2.0;  // integral lower limit factor

  double series_tol = 1e-12;

  std::string output;
  std::string format = "csv";
  unsigned threads = 0;  // 0: WIDTHS_THREADS, else hardware concurrency
  bool quiet = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, command, family, s, r, d, n, r_grid,
                                                embedding, kind, p, alpha, beta, target, name,
                                                quantity, ell, j, r_ell, a, series_tol, output,
                                                format, threads, quiet)

/// Integer list syntax: comma-separated items, each "v", "a..b" or "a..b:step".
/// Values may use exponent notation when integral (1e5).
std::vector<std::int64_t> parse_int_list(const std::string& text, std::int64_t min_value);

/// Throws UsageError or mixwidth::DomainError; performs no computation.
void validate(const RunConfig& c);

/// Effective thread count: explicit value, else WIDTHS_THREADS, else cores.
unsigned resolve_threads(unsigned requested);

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, '.' decimal point, no locale.
std::string format_double(double v);

void write_csv(std::ostream& out, const Table& t);
nlohmann::json table_json(const RunConfig& c, const Table& t);

/// Computes the table for a validated config.
Table compute(const RunConfig& c, std::ostream& progress);

/// Validates, computes and writes the output. Returns an exit status.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace widths_cli
