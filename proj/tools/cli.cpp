#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mixwidth/asymptotics.hpp"
#include "mixwidth/errors.hpp"
#include "mixwidth/lattice_count.hpp"
#include "mixwidth/sigma.hpp"
#include "mixwidth/weights.hpp"
#include "mixwidth/widths.hpp"

namespace widths_cli {

namespace mw = mixwidth;
using json = nlohmann::json;

namespace {

const std::vector<std::string> kCommands{"sigma",           "width",   "converge", "constants",
                                         "count",           "appendix-verify", "integral"};
const std::vector<std::string> kQuantities{"C", "A", "A-split"};
const std::vector<std::string> kFormats{"csv", "json"};
constexpr std::size_t kMaxListLength = 50'000'000;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

[[noreturn]] void unknown(const std::string& what, const std::string& value,
                          const std::vector<std::string>& valid) {
  throw UsageError("unknown " + what + " '" + value + "'; valid: " + join(valid));
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::int64_t parse_integer(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw UsageError("not a number: '" + t + "'");
  if (!(std::abs(v) < 9.0e15) || v != std::floor(v))
    throw UsageError("not an integer: '" + t + "'");
  return static_cast<std::int64_t>(v);
}

bool is_single_value(const std::string& text) {
  return text.find("..") == std::string::npos && text.find(',') == std::string::npos;
}

mw::Family family_of(const RunConfig& c) {
  const auto f = mw::parse_family(c.family);
  if (!f) unknown("family", c.family, mw::family_names());
  return *f;
}

mw::WeightSpec spec_of(const RunConfig& c) {
  const mw::Family f = family_of(c);
  const bool uses_r = f == mw::Family::MixedSR || f == mw::Family::IsotropicSR;
  return mw::WeightSpec(f, c.s, uses_r ? c.r : 0.0, c.d);
}

mw::Embedding embedding_of(const RunConfig& c) {
  const auto e = mw::parse_embedding(c.embedding);
  if (!e) unknown("embedding", c.embedding, mw::embedding_names());
  return *e;
}

mw::WidthKind kind_of(const RunConfig& c) {
  const auto k = mw::parse_kind(c.kind);
  if (!k) unknown("kind", c.kind, mw::kind_names());
  return *k;
}

mw::ConstantName constant_of(const RunConfig& c) {
  const auto n = mw::parse_constant(c.name);
  if (!n) unknown("constant", c.name, mw::constant_names());
  return *n;
}

std::vector<std::int64_t> n_list(const RunConfig& c, std::int64_t min_value) {
  if (c.n.empty()) throw UsageError(c.command + " requires --n");
  return parse_int_list(c.n, min_value);
}

std::vector<std::int64_t> r_list(const RunConfig& c) {
  if (c.r_grid.empty()) throw UsageError(c.command + " requires --r-grid");
  return parse_int_list(c.r_grid, 1);
}

void require_increasing(const std::vector<std::int64_t>& v, const std::string& what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) throw UsageError(what + " must be strictly increasing");
}

std::pair<std::size_t, std::size_t> bounds_of(const std::vector<std::int64_t>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {static_cast<std::size_t>(*lo), static_cast<std::size_t>(*hi)};
}

Cell opt_cell(const std::optional<int>& v) {
  return v ? Cell{static_cast<std::int64_t>(*v)} : Cell{};
}

Cell opt_cell(const std::optional<std::int64_t>& v) { return v ? Cell{*v} : Cell{}; }

Table sigma_table(const RunConfig& c, unsigned threads, std::ostream& progress) {
  const mw::WeightSpec spec = spec_of(c);
  std::vector<std::int64_t> ns = n_list(c, 1);
  if (is_single_value(c.n)) {
    const std::int64_t N = ns.front();
    ns.clear();
    for (std::int64_t n = 1; n <= N; ++n) ns.push_back(n);
  }
  const auto [lo, hi] = bounds_of(ns);
  (void)lo;
  if (!c.quiet) progress << "sigma: enumerating " << hi << " terms of " << spec.describe() << '\n';
  const mw::SigmaPrefix prefix = mw::sigma_prefix(spec, hi, threads);
  Table t{{"n", "sigma"}, {}};
  for (std::int64_t n : ns)
    t.rows.push_back({n, prefix.sigma(static_cast<std::size_t>(n))});
  return t;
}

Table width_table(const RunConfig& c, unsigned threads, std::ostream& progress) {
  const mw::WeightSpec spec = spec_of(c);
  const mw::Embedding e = embedding_of(c);
  const mw::WidthKind k = kind_of(c);
  const auto ns = n_list(c, 1);
  const auto [lo, hi] = bounds_of(ns);
  if (!c.quiet)
    progress << "width: " << mw::embedding_name(e) << ' ' << mw::kind_name(k) << " for n in ["
             << lo << ", " << hi << "]\n";
  const mw::SigmaPrefix prefix = mw::prefix_for_widths(spec, e, k, lo, hi, threads, c.p);
  const auto series = mw::width_series(prefix, e, k, lo, hi, c.p);
  Table t{{"n", "value", "lower", "upper", "exact"}, {}};
  for (std::int64_t n : ns) {
    const mw::WidthValue& w = series[static_cast<std::size_t>(n) - lo];
    t.rows.push_back({n, w.value(), w.lower, w.upper, w.exact});
  }
  return t;
}

Table converge_table(const RunConfig& c, unsigned threads, std::ostream& progress) {
  const mw::WeightSpec spec = spec_of(c);
  const mw::Embedding e = embedding_of(c);
  const mw::WidthKind k = kind_of(c);
  const auto ns = n_list(c, 3);
  const auto [lo, hi] = bounds_of(ns);
  if (!c.quiet) progress << "converge: prefix for n up to " << hi << '\n';
  const mw::SigmaPrefix prefix = mw::prefix_for_widths(spec, e, k, lo, hi, threads, c.p);
  std::vector<std::size_t> grid(ns.begin(), ns.end());
  const auto table = mw::convergence_table(prefix, e, k, grid, c.alpha, c.beta, c.target);
  Table t{{"n", "raw", "normalizer", "ratio", "target"}, {}};
  for (const auto& row : table.rows)
    t.rows.push_back({static_cast<std::int64_t>(row.n), row.raw, row.normalizer, row.ratio,
                      row.target});
  return t;
}

Table constants_table(const RunConfig& c) {
  const mw::ConstantName name = constant_of(c);
  Table t{{"name", "s", "d", "r", "value", "error_bound"}, {}};
  if (name == mw::ConstantName::SSeries) {
    const auto sv = mw::series_S(c.s, c.series_tol);
    t.rows.push_back({c.name, c.s, static_cast<std::int64_t>(c.d), c.r, sv.value, sv.error_bound});
  } else {
    const double v = mw::constant(mw::ConstantSpec{name, c.s, c.d, c.r});
    t.rows.push_back({c.name, c.s, static_cast<std::int64_t>(c.d), c.r, v, Cell{}});
  }
  return t;
}

Table count_table(const RunConfig& c, unsigned threads, std::ostream& progress) {
  const auto rs = r_list(c);
  Table t{{"quantity", "s", "r", "d_or_ell", "j", "r_ell", "count", "ratio", "exact"}, {}};
  for (std::int64_t r : rs) {
    if (!c.quiet) progress << "count: " << c.quantity << " at r=" << r << '\n';
    mw::CountResult res{};
    if (c.quantity == "C") {
      res = mw::count_C(c.s, r, c.d, 0, threads);
    } else if (c.quantity == "A") {
      res = mw::count_A(c.s, r, c.ell, threads);
    } else {
      const std::int64_t r_ell = c.r_ell > 0 ? c.r_ell : mw::split_radius(c.s, r, c.ell);
      res = mw::count_A_split(c.s, r, c.ell, c.j, r_ell, threads);
    }
    t.rows.push_back({c.quantity, c.s, r, static_cast<std::int64_t>(res.d_or_ell),
                      opt_cell(res.j), opt_cell(res.r_ell), res.count,
                      static_cast<double>(res.count) / static_cast<double>(r), res.exact});
  }
  return t;
}

Table appendix_table(const RunConfig& c, unsigned threads, std::ostream& progress) {
  const auto rs = r_list(c);
  if (!c.quiet) progress << "appendix-verify: counting over " << rs.size() << " radii\n";
  const auto report = mw::verify_appendix_limits(c.s, c.d, rs, threads);
  Table t{{"quantity", "r", "d_or_ell", "j", "r_ell", "count", "ratio", "target", "exact", "pass"},
          {}};
  for (const auto& row : report.rows)
    t.rows.push_back({row.quantity, row.r, static_cast<std::int64_t>(row.d_or_ell),
                      opt_cell(row.j), opt_cell(row.r_ell), row.count, row.ratio, row.target,
                      row.exact, Cell{}});
  for (std::int64_t r : rs) {
    if (r < 2) continue;
    if (!c.quiet) progress << "appendix-verify: sandwich at r=" << r << '\n';
    const auto sw = mw::sandwich_check(c.s, c.d, r, threads);
    t.rows.push_back({std::string("sandwich"), r, static_cast<std::int64_t>(c.d), Cell{}, Cell{},
                      sw.last_n, Cell{}, Cell{}, true, sw.pass});
  }
  return t;
}

Table integral_table(const RunConfig& c) {
  const auto ns = n_list(c, 2);
  Table t{{"s", "beta", "a", "n", "value", "target", "abs_dev"}, {}};
  const double target = 1.0 / (c.s + 1.0);
  for (std::int64_t n : ns) {
    const double v = mw::aux_integral(c.s, c.beta, c.a, static_cast<double>(n));
    t.rows.push_back({c.s, c.beta, c.a, n, v, target, std::abs(v - target)});
  }
  return t;
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return std::to_string(v);
      },
      cell);
}

json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? json(v) : json();
        else return json(v);
      },
      cell);
}

const char* kFooter =
    "CSV columns (all quantities dimensionless):\n"
    "  sigma            n, sigma\n"
    "  width            n, value, lower, upper, exact\n"
    "  converge         n, raw, normalizer, ratio, target\n"
    "  constants        name, s, d, r, value, error_bound\n"
    "  count            quantity, s, r, d_or_ell, j, r_ell, count, ratio, exact\n"
    "  appendix-verify  quantity, r, d_or_ell, j, r_ell, count, ratio, target, exact, pass\n"
    "  integral         s, beta, a, n, value, target, abs_dev\n"
    "Exit status: 0 ok, 1 usage error, 2 domain error, 3 resource cap.\n"
    "WIDTHS_THREADS sets the default thread count.";

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text, std::int64_t min_value) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError("empty item in list '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_integer(item));
    } else {
      const std::string rest = item.substr(dots + 2);
      const auto colon = rest.find(':');
      const std::int64_t a = parse_integer(item.substr(0, dots));
      const std::int64_t b = parse_integer(rest.substr(0, colon));
      const std::int64_t step = colon == std::string::npos ? 1 : parse_integer(rest.substr(colon + 1));
      if (step < 1) throw UsageError("range step must be >= 1 in '" + item + "'");
      if (b < a) throw UsageError("empty range '" + item + "'");
      if (static_cast<std::uint64_t>((b - a) / step) >= kMaxListLength)
        throw UsageError("range '" + item + "' too long");
      for (std::int64_t v = a; v <= b; v += step) out.push_back(v);
    }
    if (out.size() > kMaxListLength) throw UsageError("list '" + text + "' too long");
  }
  if (out.empty()) throw UsageError("empty list");
  for (std::int64_t v : out)
    if (v < min_value)
      throw UsageError("value " + std::to_string(v) + " below minimum " + std::to_string(min_value));
  return out;
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    unknown("command", c.command, kCommands);
  if (std::find(kFormats.begin(), kFormats.end(), c.format) == kFormats.end())
    unknown("format", c.format, kFormats);

  if (c.command == "sigma") {
    spec_of(c);
    const auto ns = n_list(c, 1);
    if (is_single_value(c.n) && static_cast<std::size_t>(ns.front()) > mw::kMaxPrefix)
      throw mw::ResourceError("prefix length above cap");
  } else if (c.command == "width" || c.command == "converge") {
    const mw::WeightSpec spec = spec_of(c);
    const mw::Embedding e = embedding_of(c);
    const mw::WidthKind k = kind_of(c);
    const auto ns = n_list(c, c.command == "converge" ? 3 : 1);
    if (c.command == "converge") require_increasing(ns, "--n");
    mw::validate_query(spec, mw::WidthQuery{e, k, bounds_of(ns).first, c.p});
  } else if (c.command == "constants") {
    if (c.name.empty()) throw UsageError("constants requires --name; valid: " + join(mw::constant_names()));
    constant_of(c);
    if (!(c.series_tol > 0.0)) throw mw::DomainError("--series-tol must be > 0");
  } else if (c.command == "count") {
    if (std::find(kQuantities.begin(), kQuantities.end(), c.quantity) == kQuantities.end())
      unknown("quantity", c.quantity, kQuantities);
    mw::Smoothness::from_double(c.s);
    const auto rs = r_list(c);
    if (c.quantity == "C" && c.d < 1) throw mw::DomainError("count C requires d>=1");
    if (c.quantity != "C" && c.ell < 1) throw mw::DomainError("count A requires ell>=1");
    if (c.quantity == "A-split") {
      if (c.j < 0 || c.j > c.ell) throw mw::DomainError("count A-split requires 0<=j<=ell");
      if (c.r_ell < 0) throw mw::DomainError("--r-ell must be >= 1 (0 selects the split radius)");
      if (static_cast<std::size_t>(c.r_ell) > bounds_of(rs).first) throw mw::DomainError("count A-split requires r_ell<=r");
    }
  } else if (c.command == "appendix-verify") {
    mw::Smoothness::from_double(c.s);
    if (c.d < 1) throw mw::DomainError("appendix-verify requires d>=1");
    require_increasing(r_list(c), "--r-grid");
  } else if (c.command == "integral") {
    const auto ns = n_list(c, 2);
    if (!(c.s > 0.0)) throw mw::DomainError("integral requires s>0");
    if (!(c.beta >= 0.0)) throw mw::DomainError("integral requires beta>=0");
    if (!(c.a > 1.0)) throw mw::DomainError("integral requires a>1");
    if (!(c.a < static_cast<double>(bounds_of(ns).first)))
      throw mw::DomainError("integral requires a<n");
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WIDTHS_THREADS")) {
    unsigned v = 0;
    const std::string_view sv(env);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size() || v == 0)
      throw UsageError("WIDTHS_THREADS must be a positive integer");
    return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

json table_json(const RunConfig& c, const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  RunConfig echo = c;
  echo.threads = 0;  // output must not depend on the thread count
  echo.output.clear();
  return json{{"command", c.command}, {"config", echo}, {"columns", t.columns}, {"rows", rows}};
}

Table compute(const RunConfig& c, std::ostream& progress) {
  const unsigned threads = resolve_threads(c.threads);
  if (c.command == "sigma") return sigma_table(c, threads, progress);
  if (c.command == "width") return width_table(c, threads, progress);
  if (c.command == "converge") return converge_table(c, threads, progress);
  if (c.command == "constants") return constants_table(c);
  if (c.command == "count") return count_table(c, threads, progress);
  if (c.command == "appendix-verify") return appendix_table(c, threads, progress);
  if (c.command == "integral") return integral_table(c);
  unknown("command", c.command, kCommands);
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    resolve_threads(c.threads);
    const Table t = compute(c, err);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.output.empty()) {
      file.open(c.output, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + c.output + "'");
      sink = &file;
    }
    if (c.format == "json")
      *sink << table_json(c, t).dump(2) << '\n';
    else
      write_csv(*sink, t);
    sink->flush();
    if (!*sink) throw mw::ResourceError("write failed");
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mw::DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const mw::ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return kExitResource;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact s-numbers of weighted Wiener and mixed-smoothness embeddings"};
  app.footer(kFooter);
  RunConfig cfg;
  std::string config_file;
  bool print_config = false;
  app.add_option("--from-config", config_file, "Run the command stored in a JSON config file");
  app.add_flag("--print-config", print_config, "Print the resolved config as JSON and exit");

  auto weight_opts = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "Weight family: " + join(mw::family_names()))
        ->capture_default_str();
    sub->add_option("--s", cfg.s, "Smoothness s")->capture_default_str();
    sub->add_option("--r", cfg.r, "Norm parameter r (mixed-sr, isotropic-sr)")->capture_default_str();
    sub->add_option("--d", cfg.d, "Dimension d")->capture_default_str();
  };
  auto common_opts = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv | json")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0: WIDTHS_THREADS or all cores)");
    sub->add_flag("--quiet,-q", cfg.quiet, "No progress on stderr");
  };
  auto width_opts = [&](CLI::App* sub) {
    sub->add_option("--embedding", cfg.embedding, "Embedding: " + join(mw::embedding_names()))
        ->capture_default_str();
    sub->add_option("--kind", cfg.kind, "Width kind: " + join(mw::kind_names()))
        ->capture_default_str();
    sub->add_option("--p", cfg.p, "Target exponent for a-to-lp, 2<p<inf");
  };
  const std::string n_help = "n values: N, a..b, a..b:step or comma list";

  auto* sigma = app.add_subcommand("sigma", "sigma_n of the weight (--n N prints sigma_1..sigma_N)");
  weight_opts(sigma);
  sigma->add_option("--n", cfg.n, n_help);
  common_opts(sigma);

  auto* width = app.add_subcommand("width", "Widths over an n range");
  weight_opts(width);
  width_opts(width);
  width->add_option("--n", cfg.n, n_help);
  common_opts(width);

  auto* converge = app.add_subcommand("converge", "Ratios width / (n^-alpha (ln n)^beta)");
  weight_opts(converge);
  width_opts(converge);
  converge->add_option("--n", cfg.n, "Increasing n grid, n >= 3");
  converge->add_option("--alpha", cfg.alpha, "Power of n")->capture_default_str();
  converge->add_option("--beta", cfg.beta, "Power of ln n")->capture_default_str();
  converge->add_option("--target", cfg.target, "Reference value copied into each row");
  common_opts(converge);

  auto* constants = app.add_subcommand("constants", "Closed-form constants");
  constants->add_option("--name", cfg.name, "Constant: " + join(mw::constant_names()));
  constants->add_option("--s", cfg.s, "Smoothness s")->capture_default_str();
  constants->add_option("--d", cfg.d, "Dimension d")->capture_default_str();
  constants->add_option("--r", cfg.r, "r (preasymptotic)")->capture_default_str();
  constants->add_option("--series-tol", cfg.series_tol, "Absolute tolerance for s-series")
      ->capture_default_str();
  common_opts(constants);

  auto* count = app.add_subcommand("count", "Lattice counts C(r,d), A(r,ell), A(r,ell,j)");
  count->add_option("--quantity", cfg.quantity, "C | A | A-split")->capture_default_str();
  count->add_option("--s", cfg.s, "Smoothness s > 1")->capture_default_str();
  count->add_option("--d", cfg.d, "Dimension d (C)")->capture_default_str();
  count->add_option("--ell", cfg.ell, "ell (A, A-split)")->capture_default_str();
  count->add_option("--j", cfg.j, "j (A-split)")->capture_default_str();
  count->add_option("--r-ell", cfg.r_ell, "Split radius (A-split; 0: floor(r^lambda_ell))")
      ->capture_default_str();
  count->add_option("--r-grid", cfg.r_grid, "r values, same syntax as --n");
  common_opts(count);

  auto* appendix = app.add_subcommand("appendix-verify", "Count limits and sigma sandwich");
  appendix->add_option("--s", cfg.s, "Smoothness s > 1")->capture_default_str();
  appendix->add_option("--d", cfg.d, "Dimension d")->capture_default_str();
  appendix->add_option("--r-grid", cfg.r_grid, "Increasing r values");
  common_opts(appendix);

  auto* integral = app.add_subcommand("integral", "int_{a/n}^1 y^s (ln n / ln(yn))^beta dy");
  integral->add_option("--s", cfg.s, "Exponent s")->capture_default_str();
  integral->add_option("--beta", cfg.beta, "Exponent beta")->capture_default_str();
  integral->add_option("--a", cfg.a, "Lower limit factor a > 1")->capture_default_str();
  integral->add_option("--n", cfg.n, n_help);
  common_opts(integral);

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      err << "usage error: cannot read config '" << config_file << "'\n";
      return kExitUsage;
    }
    try {
      cfg = json::parse(in).get<RunConfig>();
    } catch (const json::exception& e) {
      err << "usage error: bad config: " << e.what() << '\n';
      return kExitUsage;
    }
  } else if (app.get_subcommands().empty()) {
    err << "usage error: a subcommand is required; valid: " << join(kCommands) << '\n'
        << app.help();
    return kExitUsage;
  } else {
    cfg.command = app.get_subcommands().front()->get_name();
  }

  if (print_config) {
    try {
      validate(cfg);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const mw::DomainError& e) {
      err << "domain error: " << e.what() << '\n';
      return kExitDomain;
    }
    out << json(cfg).dump(2) << '\n';
    return kExitOk;
  }
  return run(cfg, out, err);
}

}  // namespace widths_cli
