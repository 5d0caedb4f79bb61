#include "cubesum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cubesum/claims.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/residues.hpp"
#include "cubesum/searchcore.hpp"
#include "cubesum/tables.hpp"

namespace cubesum {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Report {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    row.resize(header.size());
    rows.push_back(std::move(row));
  }
};

struct GlobalFlags {
  std::string format = "csv";
  bool no_header = false;
  std::string output;
  unsigned threads = 1;
  u64 budget = kDefaultBudgetBytes;
};

std::string num(u64 v) { return std::to_string(v); }
std::string flag(bool v) { return v ? "true" : "false"; }

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

void append_parts(std::vector<std::string>& row, const Tuple& t) {
  for (u64 p : t.parts) row.push_back(num(p));
}

BaseKind parse_base(const std::string& s) { return s == "integers" ? BaseKind::PositiveIntegers : BaseKind::Primes; }

// Integers, decimals and booleans become JSON scalars, empty cells null.
nlohmann::ordered_json json_cell(const std::string& cell) {
  if (cell.empty()) return nullptr;
  if (cell == "true") return true;
  if (cell == "false") return false;
  const bool digits = cell.find_first_not_of("0123456789") == std::string::npos;
  if (digits && (cell.size() == 1 || cell.front() != '0')) return std::stoull(cell);
  const auto dot = cell.find('.');
  if (dot != std::string::npos && dot > 0 && dot + 1 < cell.size() &&
      cell.find_first_not_of("0123456789.") == std::string::npos && cell.find('.', dot + 1) == std::string::npos)
    return nlohmann::ordered_json::parse(cell);
  return cell;
}

void write_report(const Report& report, const GlobalFlags& g, std::ostream& out) {
  if (g.format == "json-lines") {
    for (const auto& row : report.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < report.header.size(); ++i) obj[report.header[i]] = json_cell(row[i]);
      out << obj.dump() << '\n';
    }
    return;
  }
  const char sep = g.format == "tsv" ? '\t' : ',';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << sep;
      out << cells[i];
    }
    out << '\n';
  };
  if (!g.no_header) line(report.header);
  for (const auto& row : report.rows) line(row);
}

// Subcommand handlers

struct RepresentArgs {
  u64 target = 0;
  std::string base = "primes";
  int k = 4;
};

Report run_represent(const RepresentArgs& a, const GlobalFlags& g) {
  Report r;
  r.header = {"target"};
  for (auto& h : numbered("part", a.k)) r.header.push_back(h);
  for (const auto& t : representations(a.target, parse_base(a.base), a.k, g.budget).tuples) {
    std::vector<std::string> row{num(a.target)};
    append_parts(row, t);
    r.add(std::move(row));
  }
  return r;
}

struct ScanArgs {
  u64 lo = 1;
  u64 hi = 1000;
  std::string base = "primes";
  int k = 4;
  std::string filter = "all";
  std::string mode = "exist";
};

Report run_scan(const ScanArgs& a, const GlobalFlags& g) {
  if (a.lo > a.hi) throw UsageError("--lo (" + num(a.lo) + ") exceeds --hi (" + num(a.hi) + ")");
  std::function<bool(u64)> keep;
  if (a.filter == "prime") keep = [](u64 n) { return is_prime(n); };
  if (a.filter == "in-n") keep = [](u64 n) { return in_script_n(n); };
  if (a.filter == "even") keep = [](u64 n) { return n % 2 == 0; };
  const ScanOptions opts{a.mode == "full" ? ScanMode::FullEnumeration : ScanMode::Existence, g.threads, g.budget};
  Report r;
  r.header = {"n", "count"};
  for (auto& h : numbered("part", a.k)) r.header.push_back(h);
  for (const auto& rec : scan_range(a.lo, a.hi, parse_base(a.base), a.k, keep, opts)) {
    std::vector<std::string> row{num(rec.target), num(rec.count())};
    if (rec.count() > 0) append_parts(row, rec.tuples.front());
    r.add(std::move(row));
  }
  return r;
}

struct CubeTargetArgs {
  u64 b_max = 72;
  std::string base = "integers";
  bool all = false;
};

Report run_cube_targets(const CubeTargetArgs& a, const GlobalFlags& g) {
  Report r;
  r.header = {"b", "count", "part1", "part2", "part3", "part4"};
  const CubeScanOptions opts{a.all, g.threads, g.budget};
  for (const auto& ct : cube_target_scan(a.b_max, parse_base(a.base), opts)) {
    if (ct.record.count() == 0) r.add({num(ct.b), "0"});
    for (const auto& t : ct.record.tuples) {
      std::vector<std::string> row{num(ct.b), num(ct.record.count())};
      append_parts(row, t);
      r.add(std::move(row));
    }
  }
  return r;
}

Report run_exceptional(u64 b_max, const GlobalFlags& g) {
  Report r;
  r.header = {"b"};
  for (u64 b : exceptional_cubes(b_max, g.threads, g.budget)) r.add({num(b)});
  return r;
}

struct ClaimArgs {
  std::string id;
  std::optional<u64> bound;
  std::optional<unsigned> m;
  bool no_prune = false;
};

const std::map<std::string, u64>& default_claim_bounds() {
  static const std::map<std::string, u64> bounds = {{"eq1", 1000},   {"eq2", 1000},     {"prop1", 10000},
                                                    {"prop2", 300},  {"m6", 100},       {"forward", 10000},
                                                    {"converse237", 1000}};
  return bounds;
}

Report run_claim(const ClaimArgs& a, const GlobalFlags& g) {
  if (a.m && a.id != "m6") throw UsageError("--m applies only to --id m6");
  if (a.m && *a.m < 6) throw UsageError("--m must be at least 6 for --id m6 (got " + std::to_string(*a.m) + ")");
  const u64 bound = a.bound.value_or(default_claim_bounds().at(a.id));
  const ClaimOptions opts{!a.no_prune, g.threads, g.budget};

  static const std::map<std::string, unsigned> powers = {{"eq1", 1}, {"eq2", 2}, {"prop1", 3}, {"prop2", 5}};
  ClaimReport report;
  if (a.id == "forward") {
    report = verify_forward_necessity(bound, opts);
  } else if (a.id == "converse237") {
    report = falsify_claim_237(bound, opts);
  } else {
    const unsigned m = a.id == "m6" ? a.m.value_or(6) : powers.at(a.id);
    report = check_prime_power(m, bound, opts);
  }

  Report r;
  r.header = {"claim_id", "bound", "exhaustive", "item_kind", "value", "part1", "part2", "part3", "part4"};
  const std::vector<std::string> lead{std::string(to_string(report.claim_id)), num(report.bound),
                                      flag(report.exhaustive)};
  auto row = [&](const std::string& kind, const std::string& value) {
    std::vector<std::string> cells = lead;
    cells.push_back(kind);
    cells.push_back(value);
    return cells;
  };
  if (report.m != 0) r.add(row("exponent", num(report.m)));
  auto items = [&](const std::vector<ClaimItem>& list, const std::string& kind) {
    for (const auto& item : list) {
      auto cells = row(kind, num(item.value));
      append_parts(cells, item.tuple);
      r.add(std::move(cells));
    }
  };
  items(report.solutions, "solution");
  items(report.counterexamples, "counterexample");
  r.add(row("solutions", num(report.solutions.size())));
  r.add(row("counterexamples", num(report.counterexamples.size())));
  return r;
}

struct TableArgs {
  int id = 1;
  bool verify = false;
  bool reproduce = false;
  std::optional<u64> bound;
};

Report run_table(const TableArgs& a, const GlobalFlags& g) {
  if (a.verify == a.reproduce) throw UsageError("table needs exactly one of --verify or --reproduce");
  Report r;
  if (a.verify) {
    if (a.bound) throw UsageError("--bound applies only to --reproduce");
    r.header = {"line", "part1", "part2", "part3", "part4", "rhs", "verdict",
                "fix_part1", "fix_part2", "fix_part3", "fix_part4", "fix_rhs"};
    for (const auto& check : verify_fixture(a.id).rows) {
      std::vector<std::string> row{num(check.index + 1)};
      for (u64 p : check.row.parts) row.push_back(num(p));
      row.push_back(num(check.row.rhs));
      row.emplace_back(to_string(check.verdict));
      if (check.suggested_correction) {
        for (u64 p : check.suggested_correction->parts) row.push_back(num(p));
        row.push_back(num(check.suggested_correction->rhs));
      }
      r.add(std::move(row));
    }
    return r;
  }

  static const std::array<u64, 4> default_bounds = {120000, 10000, 2289, 72};
  const u64 bound = a.bound.value_or(default_bounds[static_cast<std::size_t>(a.id - 1)]);
  r.header = {"part1", "part2", "part3", "part4", "rhs"};
  auto add = [&](u64 rhs, const Tuple& t) {
    std::vector<std::string> row;
    append_parts(row, t);
    row.push_back(num(rhs));
    r.add(std::move(row));
  };
  if (a.id <= 2) {
    for (const auto& s : a.id == 1 ? reproduce_table1(bound, g.threads) : reproduce_table2(bound, g.threads))
      add(s.value, s.tuple);
  } else {
    const BaseKind kind = a.id == 3 ? BaseKind::Primes : BaseKind::PositiveIntegers;
    for (const auto& ct : cube_target_scan(bound, kind, {false, g.threads, g.budget}))
      for (const auto& t : ct.record.tuples) add(ct.b, t);
  }
  return r;
}

struct DensityArgs {
  int k = 4;
  std::string base = "primes";
  u64 max = 10000;
  std::string filter = "all";
};

Report run_density(const DensityArgs& a, const GlobalFlags& g) {
  const DensityFilter filter =
      a.filter == "in-n" ? DensityFilter::InScriptN : a.filter == "even" ? DensityFilter::Even : DensityFilter::All;
  const DensityResult d = density_scan(a.k, parse_base(a.base), a.max, filter, g.threads, g.budget);
  std::ostringstream fraction;
  fraction << std::fixed << std::setprecision(9) << d.fraction;
  Report r;
  r.header = {"k", "base", "filter", "max", "representable", "total", "fraction"};
  r.add({std::to_string(a.k), std::string(to_string(parse_base(a.base))), a.filter, num(a.max), num(d.representable),
         num(d.total), fraction.str()});
  return r;
}

Report run_membership(u64 n) {
  const ResidueProfile p = residue_profile(n);
  Report r;
  r.header = {"n", "is_even", "mod9", "mod7", "in_n"};
  r.add({num(p.n), flag(p.is_even), num(p.mod9), num(p.mod7), flag(p.in_script_n)});
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of cubes of primes and of positive integers", "cubesum"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json-lines", "tsv"}))
      ->capture_default_str();
  app.add_flag("--no-header", g.no_header, "Omit the header row (tsv only)");
  app.add_option("--output", g.output, "Write the report to this file");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--budget", g.budget, "Memory budget for the pair index, in bytes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  const std::vector<std::string> bases = {"primes", "integers"};
  const std::vector<int> ks = {3, 4, 5};

  RepresentArgs represent;
  auto* sub_represent = app.add_subcommand("represent", "All representations of one target");
  sub_represent->add_option("--target", represent.target, "Target n")->required();
  sub_represent->add_option("--base", represent.base, "Base set")->check(CLI::IsMember(bases))->capture_default_str();
  sub_represent->add_option("--k", represent.k, "Number of cubes")->check(CLI::IsMember(ks))->capture_default_str();

  ScanArgs scan;
  auto* sub_scan = app.add_subcommand("scan", "Representability over a range of targets");
  sub_scan->add_option("--lo", scan.lo, "First target")->capture_default_str();
  sub_scan->add_option("--hi", scan.hi, "Last target")->capture_default_str();
  sub_scan->add_option("--base", scan.base, "Base set")->check(CLI::IsMember(bases))->capture_default_str();
  sub_scan->add_option("--k", scan.k, "Number of cubes")->check(CLI::IsMember(ks))->capture_default_str();
  sub_scan->add_option("--filter", scan.filter, "Targets to include")
      ->check(CLI::IsMember({"all", "prime", "in-n", "even"}))
      ->capture_default_str();
  sub_scan->add_option("--mode", scan.mode, "First representation or all")
      ->check(CLI::IsMember({"exist", "full"}))
      ->capture_default_str();

  CubeTargetArgs cube;
  auto* sub_cube = app.add_subcommand("cube-targets", "Representations of b^3 as four cubes");
  sub_cube->add_option("--b-max", cube.b_max, "Largest b")->capture_default_str();
  sub_cube->add_option("--base", cube.base, "Base set")->check(CLI::IsMember(bases))->capture_default_str();
  sub_cube->add_flag("--all", cube.all, "Also list b with no representation");

  u64 exceptional_b_max = 100;
  auto* sub_exc = app.add_subcommand("exceptional", "b whose cube is not a sum of four positive cubes");
  sub_exc->add_option("--b-max", exceptional_b_max, "Largest b")->capture_default_str();

  ClaimArgs claim;
  auto* sub_claim = app.add_subcommand("claim", "Bounded check of one claim");
  std::vector<std::string> claim_ids;
  for (const auto& [id, bound] : default_claim_bounds()) claim_ids.push_back(id);
  sub_claim->add_option("--id", claim.id, "Claim")->required()->check(CLI::IsMember(claim_ids));
  sub_claim->add_option("--bound", claim.bound, "Bound on p (prime powers) or n");
  sub_claim->add_option("--m", claim.m, "Exponent for --id m6 (default 6)");
  sub_claim->add_flag("--no-prune", claim.no_prune, "Search odd targets with the pair index too");

  TableArgs table;
  auto* sub_table = app.add_subcommand("table", "Verify or regenerate a published table");
  sub_table->add_option("--id", table.id, "Table number")->required()->check(CLI::Range(1, 4));
  sub_table->add_flag("--verify", table.verify, "Check every row of the built-in fixture");
  sub_table->add_flag("--reproduce", table.reproduce, "Regenerate the table by search");
  sub_table->add_option("--bound", table.bound, "Bound on p (tables 1, 2) or b (tables 3, 4)");

  DensityArgs density;
  auto* sub_density = app.add_subcommand("density", "Fraction of n <= max that are representable");
  sub_density->add_option("--k", density.k, "Number of cubes")->check(CLI::IsMember(ks))->capture_default_str();
  sub_density->add_option("--base", density.base, "Base set")->check(CLI::IsMember(bases))->capture_default_str();
  sub_density->add_option("--max", density.max, "Largest n")->capture_default_str();
  sub_density->add_option("--filter", density.filter, "Targets to count")
      ->check(CLI::IsMember({"all", "in-n", "even"}))
      ->capture_default_str();

  u64 membership_n = 0;
  auto* sub_member = app.add_subcommand("membership", "Residue profile of n");
  sub_member->add_option("--n", membership_n, "n")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (g.no_header && g.format != "tsv") throw UsageError("--no-header requires --format tsv");
    Report report;
    if (sub_represent->parsed()) report = run_represent(represent, g);
    else if (sub_scan->parsed()) report = run_scan(scan, g);
    else if (sub_cube->parsed()) report = run_cube_targets(cube, g);
    else if (sub_exc->parsed()) report = run_exceptional(exceptional_b_max, g);
    else if (sub_claim->parsed()) report = run_claim(claim, g);
    else if (sub_table->parsed()) report = run_table(table, g);
    else if (sub_density->parsed()) report = run_density(density, g);
    else report = run_membership(membership_n);

    if (g.output.empty()) {
      write_report(report, g, out);
    } else {
      std::ofstream file(g.output, std::ios::binary);
      if (!file) throw UsageError("--output: cannot open " + g.output);
      write_report(report, g, file);
      if (!file.flush()) throw std::runtime_error("--output: write to " + g.output + " failed");
    }
    return kExitOk;
  } catch (const RangeError& e) {
    err << "error: out of range: " << e.what() << '\n';
    return kExitRefused;
  } catch (const BudgetError& e) {
    err << "error: over budget: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefused;
  }
}

}  // namespace cubesum
