#include "cubesum/tables.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubesum/claims.hpp"
#include "cubesum/errors.hpp"
#include "cubesum/fixture_data.hpp"
#include "cubesum/parallel.hpp"
#include "cubesum/residues.hpp"

namespace cubesum {

namespace {

unsigned rhs_exponent(int table_id) {
  switch (table_id) {
    case 1: return 1;
    case 2: return 2;
    default: return 3;
  }
}

bool parts_in_base(int table_id, const FixtureRow& row) {
  const BaseKind kind = table_id == 4 ? BaseKind::PositiveIntegers : BaseKind::Primes;
  const bool parts_ok = std::all_of(row.parts.begin(), row.parts.end(), [&](u64 p) { return in_base(kind, p); });
  const bool rhs_ok = table_id <= 2 ? is_prime(row.rhs) : row.rhs >= 1;
  return parts_ok && rhs_ok;
}

std::optional<u64> exact_sum(const FixtureRow& row) {
  try {
    return cube_sum(row.parts);
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

// rhs whose power equals the cube sum, if any.
std::optional<u64> implied_rhs(int table_id, u64 sum) {
  switch (rhs_exponent(table_id)) {
    case 1: return sum;
    case 2: {
      const u64 r = isqrt(sum);
      if (r * r == sum) return r;
      return std::nullopt;
    }
    default: {
      const u64 r = icbrt(sum);
      if (r * r * r == sum) return r;
      return std::nullopt;
    }
  }
}

std::optional<u64> parse_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return std::nullopt;
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Values one decimal-digit edit away: deletions, then substitutions, then
// insertions, each by position and digit.
std::vector<u64> digit_edits(u64 value) {
  const std::string s = std::to_string(value);
  std::vector<u64> out;
  auto add = [&](const std::string& t) {
    if (auto v = parse_decimal(t); v && *v != value && *v != 0) out.push_back(*v);
  };
  for (std::size_t i = 0; i < s.size(); ++i) add(s.substr(0, i) + s.substr(i + 1));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (char d = '0'; d <= '9'; ++d)
      if (d != s[i]) add(s.substr(0, i) + d + s.substr(i + 1));
  for (std::size_t i = 0; i <= s.size(); ++i)
    for (char d = '0'; d <= '9'; ++d) add(s.substr(0, i) + d + s.substr(i));
  return out;
}

std::vector<Solution> to_solutions(const std::vector<ClaimItem>& items) {
  std::vector<Solution> out;
  out.reserve(items.size());
  for (const auto& i : items) out.push_back({i.value, i.tuple});
  return out;
}

}  // namespace

std::string_view to_string(RowVerdict v) {
  switch (v) {
    case RowVerdict::Verified: return "verified";
    case RowVerdict::ArithmeticMismatch: return "arithmetic_mismatch";
    case RowVerdict::PrimalityFailure: return "primality_failure";
    case RowVerdict::DuplicateRow: return "duplicate_row";
  }
  return "unknown";
}

void require_table_id(int table_id) {
  if (table_id < 1 || table_id > 4) throw std::invalid_argument("unknown table id " + std::to_string(table_id));
}

TableFixture parse_fixture(int table_id, std::string_view text) {
  require_table_id(table_id);
  TableFixture fixture;
  fixture.table_id = table_id;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    std::array<u64, 5> fields{};
    std::size_t n = 0;
    while (true) {
      const auto comma = line.find(',');
      const auto field = parse_decimal(line.substr(0, comma));
      if (!field || n == fields.size())
        throw std::invalid_argument("table" + std::to_string(table_id) + ".csv line " + std::to_string(line_no) +
                                    ": expected five decimal fields");
      fields[n++] = *field;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (n != fields.size())
      throw std::invalid_argument("table" + std::to_string(table_id) + ".csv line " + std::to_string(line_no) +
                                  ": expected five decimal fields");
    fixture.rows.push_back({{fields[0], fields[1], fields[2], fields[3]}, fields[4]});
  }
  return fixture;
}

std::string format_fixture(const TableFixture& fixture) {
  std::ostringstream out;
  for (const auto& r : fixture.rows)
    out << r.parts[0] << ',' << r.parts[1] << ',' << r.parts[2] << ',' << r.parts[3] << ',' << r.rhs << '\n';
  return out.str();
}

const TableFixture& builtin_fixture(int table_id) {
  require_table_id(table_id);
  static const std::array<TableFixture, 4> fixtures = {
      parse_fixture(1, detail::kTable1Csv), parse_fixture(2, detail::kTable2Csv),
      parse_fixture(3, detail::kTable3Csv), parse_fixture(4, detail::kTable4Csv)};
  return fixtures[static_cast<std::size_t>(table_id - 1)];
}

RowVerdict check_row(int table_id, const FixtureRow& row) {
  require_table_id(table_id);
  if (!parts_in_base(table_id, row)) return RowVerdict::PrimalityFailure;
  const auto sum = exact_sum(row);
  if (!sum) return RowVerdict::ArithmeticMismatch;
  try {
    return checked_pow(row.rhs, rhs_exponent(table_id)) == *sum ? RowVerdict::Verified
                                                                : RowVerdict::ArithmeticMismatch;
  } catch (const RangeError&) {
    return RowVerdict::ArithmeticMismatch;
  }
}

std::optional<FixtureRow> find_correction(int table_id, const FixtureRow& row) {
  require_table_id(table_id);
  if (const auto sum = exact_sum(row)) {
    if (const auto rhs = implied_rhs(table_id, *sum)) {
      FixtureRow candidate = row;
      candidate.rhs = *rhs;
      if (candidate != row && check_row(table_id, candidate) == RowVerdict::Verified) return candidate;
    }
  }
  for (std::size_t i = 0; i < row.parts.size(); ++i) {
    for (u64 v : digit_edits(row.parts[i])) {
      FixtureRow candidate = row;
      candidate.parts[i] = v;
      if (check_row(table_id, candidate) == RowVerdict::Verified) return candidate;
    }
  }
  return std::nullopt;
}

ErrataReport verify_fixture(const TableFixture& fixture) {
  ErrataReport report;
  report.table_id = fixture.table_id;
  std::vector<FixtureRow> seen;
  for (std::size_t i = 0; i < fixture.rows.size(); ++i) {
    const FixtureRow& row = fixture.rows[i];
    RowCheck check{i, row, RowVerdict::Verified, std::nullopt};
    if (std::find(seen.begin(), seen.end(), row) != seen.end()) {
      check.verdict = RowVerdict::DuplicateRow;
    } else {
      seen.push_back(row);
      check.verdict = check_row(fixture.table_id, row);
      if (check.verdict != RowVerdict::Verified) check.suggested_correction = find_correction(fixture.table_id, row);
    }
    report.rows.push_back(check);
  }
  return report;
}

ErrataReport verify_fixture(int table_id) { return verify_fixture(builtin_fixture(table_id)); }

std::vector<Solution> reproduce_table1(u64 p_bound, unsigned threads) {
  std::vector<Solution> out;
  if (p_bound < 2) return out;
  const SieveTable primes = sieve_primes(p_bound);
  std::vector<bool> is_p(p_bound + 1, false);
  for (u64 p : primes.primes) is_p[p] = true;
  ScanOptions opts;
  opts.mode = ScanMode::FullEnumeration;
  opts.threads = threads;
  for (auto& rec : scan_range(2, p_bound, BaseKind::Primes, 4, [&](u64 n) { return is_p[n]; }, opts))
    for (auto& t : rec.tuples) out.push_back({rec.target, std::move(t)});
  return out;
}

std::vector<Solution> reproduce_table2(u64 p_bound, unsigned threads) {
  ClaimOptions opts;
  opts.threads = threads;
  return to_solutions(check_prime_power(2, p_bound, opts).solutions);
}

std::vector<CubeTarget> cube_target_scan(u64 b_bound, BaseKind kind, const CubeScanOptions& options) {
  std::vector<CubeTarget> out;
  if (b_bound == 0) return out;
  const CubeSearcher searcher(kind, checked_cube(b_bound), options.budget_bytes);
  const u64 chunk = 32;
  const std::size_t chunks = static_cast<std::size_t>((b_bound + chunk - 1) / chunk);
  std::vector<std::vector<CubeTarget>> parts(chunks);
  parallel_chunks(chunks, options.threads, [&](std::size_t c) {
    for (u64 b = c * chunk + 1; b <= std::min(b_bound, (c + 1) * chunk); ++b) {
      auto rec = searcher.representations(b * b * b, 4);
      if (rec.count() > 0 || options.include_unrepresentable) parts[c].push_back({b, std::move(rec)});
    }
  });
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

std::vector<u64> exceptional_cubes(u64 b_bound, unsigned threads, u64 budget_bytes) {
  std::vector<u64> out;
  if (b_bound == 0) return out;
  const CubeSearcher searcher(BaseKind::PositiveIntegers, checked_cube(b_bound), budget_bytes);
  const u64 chunk = 32;
  const std::size_t chunks = static_cast<std::size_t>((b_bound + chunk - 1) / chunk);
  std::vector<std::vector<u64>> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    for (u64 b = c * chunk + 1; b <= std::min(b_bound, (c + 1) * chunk); ++b)
      if (!searcher.is_representable(b * b * b, 4)) parts[c].push_back(b);
  });
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

DensityResult density_scan(int k, BaseKind kind, u64 x_max, DensityFilter filter, unsigned threads,
                           u64 budget_bytes) {
  require_supported_k(k);
  DensityResult result;
  if (x_max == 0) return result;
  auto keep = [filter](u64 n) {
    switch (filter) {
      case DensityFilter::InScriptN: return in_script_n(n);
      case DensityFilter::Even: return n % 2 == 0;
      default: return true;
    }
  };
  ScanOptions opts{ScanMode::Existence, threads, budget_bytes};
  for (const auto& rec : scan_range(1, x_max, kind, k, keep, opts)) {
    ++result.total;
    if (rec.count() > 0) ++result.representable;
  }
  result.fraction = result.total == 0 ? 0.0 : static_cast<double>(result.representable) / static_cast<double>(result.total);
  return result;
}

}  // namespace cubesum
