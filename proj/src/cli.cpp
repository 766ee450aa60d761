#include "padeclust/cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "padeclust/cluster.hpp"
#include "padeclust/errors.hpp"
#include "padeclust/experiments.hpp"
#include "padeclust/pade.hpp"
#include "padeclust/plot.hpp"

#ifndef PADECLUST_VERSION
#define PADECLUST_VERSION "0.0.0"
#endif

namespace padeclust::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kManifestSchemaVersion = 1;

// Bad arguments that CLI11 cannot see, e.g. an unparsable coefficient list.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write " + path.string());
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  auto separator = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    if (separator(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !separator(text[j])) ++j;
    const char* first = text.data() + i;
    const char* last = text.data() + j;
    if (*first == '+') ++first;
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw UsageError("not a finite number: '" + text.substr(i, j - i) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

struct CoeffArgs {
  std::string inline_list;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--coeffs", inline_list, "series or polynomial coefficients a_0,a_1,...");
    auto* b = cmd->add_option("--coeffs-file", file, "file of coefficients separated by commas or whitespace")
                  ->check(CLI::ExistingFile);
    a->excludes(b);
    cmd->callback([a, b] {
      if (a->count() + b->count() == 0) throw CLI::RequiredError("--coeffs or --coeffs-file");
    });
  }

  std::vector<double> load() const {
    auto v = parse_numbers(file.empty() ? inline_list : read_text(file));
    if (v.empty()) throw UsageError("no coefficients given");
    return v;
  }
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// Real coefficients print as numbers, complex ones as [re, im] pairs.
json poly_json(const ComplexPolynomial& p) {
  const auto& c = p.coeffs();
  const bool real = std::all_of(c.begin(), c.end(), [](Complex z) { return z.imag() == 0.0; });
  json out = json::array();
  for (const auto& z : c) out.push_back(real ? json(z.real()) : complex_json(z));
  return out;
}

json finite_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Table roots_table(const RootSet& roots) {
  Table t;
  t.columns = {"index", "re", "im", "modulus"};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Complex z = roots.roots[i];
    t.rows.push_back({static_cast<double>(i), z.real(), z.imag(), std::abs(z)});
  }
  return t;
}

std::string table_csv(const Table& t) {
  std::ostringstream s;
  t.write_csv(s);
  return s.str();
}

int cmd_pade(const CoeffArgs& coeffs, std::size_t m, std::size_t n, Precision precision,
             const std::string& format, std::ostream& out) {
  const auto a = coeffs.load();
  const PadePair pair = pade(a, m, n, PadeOptions{precision});
  const ComplexPolynomial p = pair.p.trimmed();
  const ComplexPolynomial q = pair.q.trimmed();
  if (format == "csv") {
    out << "polynomial,index,re,im\n";
    auto rows = [&](const char* name, const ComplexPolynomial& poly) {
      for (std::size_t j = 0; j < poly.size(); ++j) {
        out << name << ',' << j << ',' << format_number(poly[j].real()) << ','
            << format_number(poly[j].imag()) << '\n';
      }
    };
    rows("p", p);
    rows("q", q);
    return kExitOk;
  }
  const auto& d = pair.diagnostics;
  json j{{"m", m},
         {"n", n},
         {"p", poly_json(p)},
         {"q", poly_json(q)},
         {"diagnostics",
          {{"logdet_denominator", finite_or_null(d.logdet_denominator)},
           {"condition", finite_or_null(d.condition)},
           {"order_residual", finite_or_null(d.order_residual)},
           {"precision_used", precision_name(d.precision_used)}}}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_roots(const CoeffArgs& coeffs, Precision precision, double tol, int max_iter,
              const std::string& format, const std::string& out_dir, std::ostream& out) {
  const auto a = coeffs.load();
  const RootSet roots =
      find_roots(ComplexPolynomial::from_real(a), RootOptions{tol, max_iter, precision});
  const Table t = roots_table(roots);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "roots.csv", table_csv(t));
  }
  if (format == "csv") {
    out << table_csv(t);
    return kExitOk;
  }
  json list = json::array();
  for (const auto& z : roots.roots) list.push_back(complex_json(z));
  json j{{"degree", roots.size()},
         {"roots", list},
         {"residual", finite_or_null(roots.residual)},
         {"converged", roots.converged},
         {"iterations", roots.iterations},
         {"precision_used", precision_name(roots.precision_used)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_cluster_report(const CoeffArgs& coeffs, const ReportOptions& options, Precision precision,
                       const std::string& format, std::ostream& out) {
  const auto a = coeffs.load();
  const ComplexPolynomial p = ComplexPolynomial::from_real(a);
  const RootSet roots = find_roots(p, RootOptions{1e-10, 1000, precision});
  const ClusteringReport r = clustering_report(p, roots, options);
  if (format == "csv") {
    out << "metric,value\n";
    out << "et_log," << format_number(r.et_log) << '\n';
    for (std::size_t k = 0; k < r.rhos.size(); ++k) {
      const std::string rho = format_number(r.rhos[k]);
      out << "radial_defect_" << rho << ',' << format_number(r.radial_defect[k]) << '\n'
          << "radial_bound_" << rho << ',' << format_number(r.radial_bound[k]) << '\n'
          << "radial_jensen_bound_" << rho << ',' << format_number(r.radial_jensen_bound[k]) << '\n';
    }
    out << "max_sector_discrepancy," << format_number(r.max_sector_discrepancy) << '\n'
        << "sector_bound," << format_number(r.sector_bound) << '\n'
        << "bl_upper," << format_number(r.bl_upper) << '\n'
        << "bl_lower_estimate," << format_number(r.bl_lower_estimate) << '\n'
        << "all_hold," << (r.all_hold() ? 1 : 0) << '\n'
        << "proven_hold," << (r.proven_hold() ? 1 : 0) << '\n';
    return kExitOk;
  }
  json radial = json::array();
  for (std::size_t k = 0; k < r.rhos.size(); ++k) {
    radial.push_back({{"rho", r.rhos[k]},
                      {"defect", r.radial_defect[k]},
                      {"bound", finite_or_null(r.radial_bound[k])},
                      {"jensen_bound", finite_or_null(r.radial_jensen_bound[k])}});
  }
  json j{{"degree", roots.size()},
         {"et_log", finite_or_null(r.et_log)},
         {"radial", radial},
         {"max_sector_discrepancy", r.max_sector_discrepancy},
         {"sector_bound", finite_or_null(r.sector_bound)},
         {"bl_upper", finite_or_null(r.bl_upper)},
         {"bl_lower_estimate", r.bl_lower_estimate},
         {"radial_holds", r.radial_holds},
         {"radial_jensen_holds", r.radial_jensen_holds},
         {"sector_holds", r.sector_holds},
         {"bl_consistent", r.bl_consistent},
         {"all_hold", r.all_hold()},
         {"proven_hold", r.proven_hold()}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct ExperimentArgs {
  std::string name;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> threads;
  std::optional<std::string> precision;
  std::string out_dir;
  std::string format = "json";
};

ExperimentConfig load_config(const ExperimentArgs& args) {
  const ExperimentName name = parse_experiment(args.name);
  ExperimentConfig c = default_config(name);
  if (!args.config_path.empty()) {
    json j;
    try {
      j = json::parse(read_text(args.config_path));
    } catch (const json::exception& e) {
      throw ConfigError(args.config_path + ": " + e.what());
    }
    // a run manifest is accepted as a config: its "config" member is the echo
    if (j.is_object() && j.contains("config") && j["config"].is_object()) j = j["config"];
    if (j.is_object() && j.contains("experiment") && j["experiment"] != args.name) {
      throw ConfigError("config is for experiment " + j["experiment"].dump() + ", not '" +
                        args.name + "'");
    }
    c = config_from_json(j, name);
  }
  if (args.seed) c.seed = *args.seed;
  if (args.trials) c.trials = *args.trials;
  if (args.threads) c.threads = *args.threads;
  if (args.precision) c.precision = parse_precision(*args.precision);
  c.validate();
  return c;
}

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = load_config(args);
  const fs::path dir = args.out_dir.empty()
                           ? fs::path("runs") / (args.name + "-seed" + std::to_string(c.seed))
                           : fs::path(args.out_dir);
  const std::string started = utc_now();
  const RunResult r = run_experiment(c);
  const std::string finished = utc_now();

  fs::create_directories(dir);
  const std::string csv = table_csv(r.trials);
  const std::string summary = r.summary.dump(2) + "\n";
  write_text(dir / "trials.csv", csv);
  write_text(dir / "summary.json", summary);
  json files = json::object();
  for (const char* f : {"trials.csv", "summary.json"}) {
    files[f] = {{"sha256", sha256_file((dir / f).string())}, {"bytes", fs::file_size(dir / f)}};
  }
  json manifest{{"schema_version", kManifestSchemaVersion},
                {"tool", "padeclust"},
                {"version", PADECLUST_VERSION},
                {"experiment", args.name},
                {"seed", c.seed},
                {"config", to_json(c)},
                {"started_at", started},
                {"finished_at", finished},
                {"files", files},
                {"invariant_violations", r.invariant_violations}};
  // written last: its presence marks a complete run directory
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  out << (args.format == "csv" ? csv : summary);
  err << "run directory: " << dir.string() << '\n';
  if (r.invariant_breach()) {
    err << "invariant breach: " << r.invariant_violations
        << " trials violated a proven inequality\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_plot(const std::string& dir, const std::string& out_dir, std::ostream& out) {
  for (const auto& path : plot_run_directory(dir, out_dir.empty() ? dir : out_dir)) {
    out << path.string() << '\n';
  }
  return kExitOk;
}

Precision precision_or(const std::optional<std::string>& p, Precision fallback) {
  return p ? parse_precision(*p) : fallback;
}

}  // namespace

std::string sha256_file(const std::string& path) {
  const std::string data = read_text(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pade approximants of power series and the clustering of their zeros and poles",
               "padeclust"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PADECLUST_VERSION);
  app.failure_message(CLI::FailureMessage::help);

  const std::vector<std::string> precisions{"double", "extended"};
  const std::vector<std::string> formats{"json", "csv"};
  std::optional<std::string> precision;
  std::string format = "json";
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--precision", precision, "double or extended (float128 fallback)")
        ->check(CLI::IsMember(precisions));
    cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember(formats));
  };

  CoeffArgs coeffs;
  std::size_t m = 0;
  std::size_t n = 0;
  auto* pade_cmd = app.add_subcommand("pade", "[m,n] Pade pair of a power series");
  coeffs.attach(pade_cmd);
  pade_cmd->add_option("--m", m, "numerator degree")->required();
  pade_cmd->add_option("--n", n, "denominator degree")->required();
  common(pade_cmd);

  double tol = 1e-10;
  int max_iter = 1000;
  std::string roots_out;
  auto* roots_cmd = app.add_subcommand("roots", "zeros of a polynomial");
  coeffs.attach(roots_cmd);
  roots_cmd->add_option("--tol", tol, "residual tolerance");
  roots_cmd->add_option("--max-iter", max_iter, "iteration limit");
  roots_cmd->add_option("--out", roots_out, "directory to receive roots.csv");
  common(roots_cmd);

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("cluster-report", "clustering metrics of a polynomial's zeros");
  coeffs.attach(report_cmd);
  report_cmd->add_option("--rho", report.rhos, "annulus half-widths")->delimiter(',');
  report_cmd->add_option("--grid", report.grid_size, "sector grid size")->check(CLI::Range(4, 1 << 16));
  report_cmd->add_option("--family", report.family_size, "test-function family size")
      ->check(CLI::Range(8, 1 << 12));
  common(report_cmd);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo protocols");
  exp_cmd->require_subcommand(1);
  auto* run_cmd = exp_cmd->add_subcommand("run", "run one protocol into a run directory");
  std::string names;
  for (const auto& v : experiment_names()) names += (names.empty() ? "" : ", ") + v;
  run_cmd->add_option("name", exp.name, "one of: " + names)->required();
  run_cmd->add_option("--config", exp.config_path, "JSON config or run manifest")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", exp.seed, "master seed");
  run_cmd->add_option("--trials", exp.trials, "trials per cell");
  run_cmd->add_option("--threads", exp.threads, "worker threads (0: all cores)");
  run_cmd->add_option("--out", exp.out_dir, "run directory (default runs/<name>-seed<seed>)");
  common(run_cmd);

  std::string plot_dir;
  std::string plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "SVG charts for a run directory");
  plot_cmd->add_option("dir", plot_dir, "run directory")->required();
  plot_cmd->add_option("--out", plot_out, "output directory (default: the run directory)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pade_cmd) return cmd_pade(coeffs, m, n, precision_or(precision, Precision::kDouble), format, out);
    if (*roots_cmd) {
      return cmd_roots(coeffs, precision_or(precision, Precision::kDouble), tol, max_iter, format,
                       roots_out, out);
    }
    if (*report_cmd) {
      return cmd_cluster_report(coeffs, report, precision_or(precision, Precision::kDouble), format,
                                out);
    }
    if (*run_cmd) {
      exp.precision = precision;
      exp.format = format;
      return cmd_experiment(exp, out, err);
    }
    if (*plot_cmd) return cmd_plot(plot_dir, plot_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace padeclust::cli
