#include "hookdist/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hookdist/dist.hpp"
#include "hookdist/verify.hpp"
#include "json.hpp"

namespace hookdist::cli {

namespace {

using nlohmann::ordered_json;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void check_t(unsigned t) {
  if (t < 2) throw UsageError(fmt::format("--t must be at least 2 (got {})", t));
}

void check_n(unsigned n) {
  if (n < 1) throw UsageError(fmt::format("--n must be at least 1 (got {})", n));
}

std::string csv_field(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string cell;
  bool quoted = false;
  bool cell_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"' && !cell_started && cell.empty()) {
      quoted = true;
      cell_started = true;
    } else if (c == ',') {
      record.push_back(std::move(cell));
      cell.clear();
      cell_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(cell));
      records.push_back(std::move(record));
      record.clear();
      cell.clear();
      cell_started = false;
    } else {
      cell += c;
      cell_started = true;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  if (cell_started || !cell.empty() || !record.empty()) {
    record.push_back(std::move(cell));
    records.push_back(std::move(record));
  }
  return records;
}

ordered_json json_cell(const std::string& cell, bool exact_integer) {
  if (cell.empty()) return nullptr;
  if (exact_integer) return cell;
  if (cell == "inf" || cell == "-inf") return cell;
  return std::stod(cell);
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  return fmt::format("{:.12g}", v);
}

// ---------------------------------------------------------------------------
// Commands

DataTable cmd_coeffs(TableSource& source, unsigned t, unsigned n) {
  check_t(t);
  check_n(n);
  const CoeffTable table = source.table(t, n);
  DataTable out{"coeffs", {{"t", std::to_string(t)}, {"n", std::to_string(n)}}, {"m", "coeff", "nonzero"}, {}};
  for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
    out.rows.push_back({std::to_string(m), table.coeffs[m].get_str(10), sgn(table.coeffs[m]) != 0 ? "1" : "0"});
  }
  return out;
}

DataTable cmd_oracle(unsigned t, unsigned n, unsigned enumeration_bound) {
  check_t(t);
  check_n(n);
  const CoeffTable table = brute_force_table(t, n, enumeration_bound);
  DataTable out{"oracle", {{"t", std::to_string(t)}, {"n", std::to_string(n)}}, {"m", "coeff", "nonzero"}, {}};
  for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
    out.rows.push_back({std::to_string(m), table.coeffs[m].get_str(10), sgn(table.coeffs[m]) != 0 ? "1" : "0"});
  }
  return out;
}

std::vector<DensityRow> density_table(TableSource& source, std::span<const unsigned> ts,
                                      std::span<const unsigned> ns) {
  if (ts.empty() || ns.empty()) throw UsageError("density table needs at least one t and one n");
  for (unsigned t : ts) check_t(t);
  for (unsigned n : ns) check_n(n);
  const unsigned max_n = *std::max_element(ns.begin(), ns.end());
  for (unsigned t : ts) source.prepare(t, max_n);

  std::vector<std::future<DensityRow>> jobs;
  jobs.reserve(ns.size());
  for (unsigned n : ns) {
    jobs.push_back(std::async(std::launch::async, [&source, ts, n] {
      DensityRow row{n, {}};
      for (unsigned t : ts) row.cells.push_back(support_stats(source.table(t, n)));
      return row;
    }));
  }
  std::vector<DensityRow> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

DataTable cmd_density_table(TableSource& source, std::span<const unsigned> ts, std::span<const unsigned> ns) {
  DataTable out{"density", {}, {"n"}, {}};
  for (unsigned t : ts) out.columns.push_back(fmt::format("t{}", t));
  for (const auto& row : density_table(source, ts, ns)) {
    std::vector<std::string> cells{std::to_string(row.n)};
    for (const auto& s : row.cells) {
      try {
        cells.push_back(s.decimal(5));
      } catch (const std::domain_error&) {
        cells.emplace_back();
      }
    }
    out.rows.push_back(std::move(cells));
  }
  return out;
}

CurveSet parse_curve_set(std::string_view which) {
  if (which == "pmf") return CurveSet::Pmf;
  if (which == "h") return CurveSet::H;
  if (which == "g") return CurveSet::G;
  if (which == "all") return CurveSet::All;
  throw UsageError(fmt::format("--which must be pmf, h, g or all (got '{}')", which));
}

DataTable cmd_curves(TableSource& source, unsigned t, unsigned n, CurveSet which) {
  check_t(t);
  check_n(n);
  const bool has_h = t == 2 || t == 3;
  if (which == CurveSet::H && !has_h)
    throw UsageError(fmt::format("continuous approximation h is only available for t = 2, 3 (got t = {})", t));
  const bool want_f = which == CurveSet::Pmf || which == CurveSet::All;
  const bool want_h = has_h && (which == CurveSet::H || which == CurveSet::All);
  const bool want_g = which == CurveSet::G || which == CurveSet::All;

  DataTable out{"curves", {{"t", std::to_string(t)}, {"n", std::to_string(n)}}, {"m", "x"}, {}};
  if (want_f) out.columns.push_back("f");
  if (want_h && t == 3) out.columns.push_back("alpha");
  if (want_h) out.columns.push_back("h");
  if (want_h && t == 3) {
    out.columns.push_back("h_x2");
    out.columns.push_back("h_x4");
  }
  if (want_g) out.columns.push_back("g");

  for (const auto& s : grid_samples(source.table(t, n))) {
    std::vector<std::string> row{std::to_string(s.m), format_real(s.x)};
    if (want_f) row.push_back(format_real(s.f));
    if (want_h && t == 3) row.push_back(s.alpha != 0 ? std::to_string(s.alpha) : "");
    if (want_h) row.push_back(format_real(s.h));
    if (want_h && t == 3) {
      row.push_back(format_real(2 * s.h));
      row.push_back(format_real(4 * s.h));
    }
    if (want_g) row.push_back(format_real(s.g));
    out.rows.push_back(std::move(row));
  }
  return out;
}

DataTable cmd_cdf(TableSource& source, unsigned t, unsigned n, std::span<const double> xs) {
  check_t(t);
  check_n(n);
  const CoeffTable table = source.table(t, n);
  DataTable out{"cdf", {{"t", std::to_string(t)}, {"n", std::to_string(n)}}, {"x", "cdf", "limit", "gap"}, {}};
  for (double x : xs) {
    const double f = cdf_at_xi(table, x);
    const double lim = limit_cdf(t, x);
    out.rows.push_back({format_real(x), format_real(f), format_real(lim), format_real(std::abs(f - lim))});
  }
  return out;
}

DataTable cmd_charfn(TableSource& source, unsigned t, unsigned n, std::span<const double> rs) {
  check_t(t);
  check_n(n);
  const CoeffTable table = source.table(t, n);
  DataTable out{"charfn",
                {{"t", std::to_string(t)}, {"n", std::to_string(n)}},
                {"r", "re", "im", "limit_re", "limit_im", "gap"},
                {}};
  for (double r : rs) {
    const auto v = char_fn(table, r);
    const auto lim = limit_char_fn(t, r);
    out.rows.push_back({format_real(r), format_real(v.real()), format_real(v.imag()), format_real(lim.real()),
                        format_real(lim.imag()), format_real(std::abs(v - lim))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_csv(const DataTable& table) {
  std::string out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string render_json(const DataTable& table, bool timestamp) {
  ordered_json doc;
  doc["command"] = table.command;
  for (const auto& [key, value] : table.meta) doc[key] = value;
  if (timestamp) doc["generated_at"] = iso_timestamp();
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      const auto& col = table.columns[i];
      obj[col] = json_cell(row[i], col == "coeff");
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

DataTable parse_csv(std::string_view text) {
  auto records = parse_csv_records(text);
  if (records.empty()) throw std::runtime_error("empty CSV document");
  DataTable out;
  out.columns = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != out.columns.size())
      throw std::runtime_error(fmt::format("CSV record {} has {} fields, expected {}", i, records[i].size(),
                                           out.columns.size()));
    out.rows.push_back(std::move(records[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entry point

namespace {

std::string verify_report(const std::vector<CheckResult>& results, std::string_view level, bool timestamp) {
  ordered_json doc;
  doc["command"] = "verify";
  doc["level"] = level;
  if (timestamp) doc["generated_at"] = iso_timestamp();
  const bool ok = all_passed(results);
  doc["passed"] = ok;
  const auto first = std::find_if(results.begin(), results.end(),
                                  [](const CheckResult& r) { return !r.passed && !r.informational; });
  doc["first_failure"] = first == results.end() ? ordered_json(nullptr) : ordered_json(first->id);
  ordered_json checks = ordered_json::array();
  for (const auto& r : results) {
    ordered_json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["passed"] = r.passed;
    if (r.informational) c["informational"] = true;
    c["detail"] = r.detail;
    if (timestamp) c["seconds"] = r.seconds;
    checks.push_back(std::move(c));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

std::vector<double> linear_grid(double lo, double hi, unsigned steps) {
  if (steps < 1) throw UsageError("--x-steps must be at least 1");
  if (steps == 1) return {lo};
  std::vector<double> xs(steps);
  for (unsigned i = 0; i < steps; ++i) xs[i] = lo + (hi - lo) * i / (steps - 1);
  return xs;
}

const std::vector<unsigned> kDensityGrid{100, 500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distribution of hook lengths divisible by t over partitions of n"};
  app.require_subcommand(1);

  unsigned t = 0;
  unsigned n = 0;
  std::vector<unsigned> t_list{2, 3};
  std::vector<unsigned> n_list = kDensityGrid;
  double x_min = -3;
  double x_max = 3;
  unsigned x_steps = 61;
  std::vector<double> r_list{-2, -1, -0.5, 0.5, 1, 2};
  std::string format = "csv";
  std::string output;
  std::string cache_dir;
  bool no_timestamp = false;
  std::string level = "fast";
  std::string which = "all";
  unsigned enum_bound = kEnumerationBound;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Write to this file instead of stdout");
    sub->add_option("--cache-dir", cache_dir, fmt::format("Series cache directory (default ${})", kCacheDirEnv));
    sub->add_flag("--no-timestamp", no_timestamp, "Omit timestamps and timings from JSON output");
  };
  const auto add_tn = [&](CLI::App* sub) {
    sub->add_option("--t", t, "Divisor t >= 2")->required();
    sub->add_option("--n", n, "Partition weight n >= 1")->required();
  };

  auto* coeffs = app.add_subcommand("coeffs", "Coefficients p_t(m, n) of P_t(n, x)");
  add_tn(coeffs);
  add_common(coeffs);

  auto* oracle = app.add_subcommand("oracle", "Coefficients by brute-force partition enumeration");
  add_tn(oracle);
  oracle->add_option("--enum-bound", enum_bound, "Largest n the enumeration accepts");
  add_common(oracle);

  auto* density = app.add_subcommand("density", "Proportion of nonzero coefficients per (t, n)");
  density->add_option("--t-list", t_list, "Divisors t")->delimiter(',');
  density->add_option("--n-list", n_list, "Weights n")->delimiter(',');
  add_common(density);

  auto* curves = app.add_subcommand("curves", "Scaled mass function with its continuous and Gamma curves");
  add_tn(curves);
  curves->add_option("--which", which, "pmf, h, g or all");
  add_common(curves);

  auto* cdf_cmd = app.add_subcommand("cdf", "CDF at mu + sigma x against the limiting CDF");
  add_tn(cdf_cmd);
  cdf_cmd->add_option("--x-min", x_min);
  cdf_cmd->add_option("--x-max", x_max);
  cdf_cmd->add_option("--x-steps", x_steps);
  add_common(cdf_cmd);

  auto* charfn = app.add_subcommand("charfn", "Standardized characteristic function against its limit");
  add_tn(charfn);
  charfn->add_option("--r-list", r_list, "Arguments r")->delimiter(',');
  add_common(charfn);

  auto* verify = app.add_subcommand("verify", "Run the oracle and identity cross-checks");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::optional<SeriesCache> cache;
    if (!cache_dir.empty())
      cache.emplace(cache_dir);
    else
      cache = SeriesCache::from_env();
    TableSource source(std::move(cache));

    std::string text;
    int code = kExitOk;
    const auto emit = [&](const DataTable& table) {
      text = format == "json" ? render_json(table, !no_timestamp) : render_csv(table);
    };

    if (coeffs->parsed()) {
      emit(cmd_coeffs(source, t, n));
    } else if (oracle->parsed()) {
      emit(cmd_oracle(t, n, enum_bound));
    } else if (density->parsed()) {
      emit(cmd_density_table(source, t_list, n_list));
    } else if (curves->parsed()) {
      emit(cmd_curves(source, t, n, parse_curve_set(which)));
    } else if (cdf_cmd->parsed()) {
      emit(cmd_cdf(source, t, n, linear_grid(x_min, x_max, x_steps)));
    } else if (charfn->parsed()) {
      emit(cmd_charfn(source, t, n, r_list));
    } else if (verify->parsed()) {
      const auto results = run_verification(level == "full" ? VerifyLevel::Full : VerifyLevel::Fast, source);
      text = verify_report(results, level, !no_timestamp);
      if (!all_passed(results)) code = kExitVerifyFailed;
    }

    if (output.empty()) {
      out << text;
    } else {
      std::ofstream file(output, std::ios::trunc);
      if (!file) throw std::runtime_error(fmt::format("cannot open {} for writing", output));
      file << text;
    }
    if (code == kExitVerifyFailed) {
      const auto doc = ordered_json::parse(text);
      err << "verification failed: " << doc["first_failure"].get<std::string>() << "\n";
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitBoundRefused;
  }
}

}  // namespace hookdist::cli
