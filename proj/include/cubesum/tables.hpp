#pragma once

// Published tables of four-cube representations, kept verbatim as fixtures
// (data/table1.csv .. table4.csv), with mechanical verification, correction
// suggestions for rows that fail, and the scans that regenerate them.
//
//   table 1: p1..p4 prime, rhs p prime,   p   = sum of cubes
//   table 2: p1..p4 prime, rhs p prime,   p^2 = sum of cubes
//   table 3: p1..p4 prime, rhs b >= 1,    b^3 = sum of cubes
//   table 4: x1..x4 >= 1,  rhs b >= 1,    b^3 = sum of cubes

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubesum/basegen.hpp"
#include "cubesum/searchcore.hpp"

namespace cubesum {

struct FixtureRow {
  std::array<u64, 4> parts{};
  u64 rhs = 0;

  friend bool operator==(const FixtureRow&, const FixtureRow&) = default;
};

struct TableFixture {
  int table_id = 0;
  std::vector<FixtureRow> rows;
  bool verbatim = true;  // transcribed as printed, typos included
};

enum class RowVerdict { Verified, ArithmeticMismatch, PrimalityFailure, DuplicateRow };

std::string_view to_string(RowVerdict v);

struct RowCheck {
  std::size_t index = 0;  // 0-based row number in the fixture
  FixtureRow row;
  RowVerdict verdict = RowVerdict::Verified;
  std::optional<FixtureRow> suggested_correction;
};

struct ErrataReport {
  int table_id = 0;
  std::vector<RowCheck> rows;
};

/// Throws std::invalid_argument unless 1 <= table_id <= 4.
void require_table_id(int table_id);

/// Parses "part1,part2,part3,part4,rhs" lines. Throws std::invalid_argument
/// with the line number on malformed input.
TableFixture parse_fixture(int table_id, std::string_view text);
std::string format_fixture(const TableFixture& fixture);

/// The fixture compiled into the library.
const TableFixture& builtin_fixture(int table_id);

/// Verdict for one row, ignoring duplicates.
RowVerdict check_row(int table_id, const FixtureRow& row);

/// First single-edit correction of a failing row that verifies: the rhs
/// implied by the exact cube sum, then single-digit edits (substitute,
/// insert, delete) of each part keeping the printed rhs.
std::optional<FixtureRow> find_correction(int table_id, const FixtureRow& row);

ErrataReport verify_fixture(const TableFixture& fixture);
ErrataReport verify_fixture(int table_id);

struct Solution {
  u64 value = 0;  // p or b
  Tuple tuple;
};

/// Every prime p <= p_bound that is a sum of four prime cubes, with all of
/// its representations, ascending by p then tuple.
std::vector<Solution> reproduce_table1(u64 p_bound, unsigned threads = 1);

/// Same for p^2.
std::vector<Solution> reproduce_table2(u64 p_bound, unsigned threads = 1);

struct CubeTarget {
  u64 b = 0;
  RepresentationRecord record;  // representations of b^3
};

struct CubeScanOptions {
  bool include_unrepresentable = false;
  unsigned threads = 1;
  u64 budget_bytes = kDefaultBudgetBytes;
};

/// Representations of b^3 as four cubes of the base, for 1 <= b <= b_bound.
std::vector<CubeTarget> cube_target_scan(u64 b_bound, BaseKind kind, const CubeScanOptions& options = {});

/// b <= b_bound whose cube is not a sum of four positive cubes, ascending.
std::vector<u64> exceptional_cubes(u64 b_bound, unsigned threads = 1, u64 budget_bytes = kDefaultBudgetBytes);

enum class DensityFilter { All, InScriptN, Even };

struct DensityResult {
  u64 representable = 0;
  u64 total = 0;
  double fraction = 0.0;
};

/// Counts n in [1, x_max] passing the filter, and how many of them are sums
/// of k cubes of the base.
DensityResult density_scan(int k, BaseKind kind, u64 x_max, DensityFilter filter, unsigned threads = 1,
                           u64 budget_bytes = kDefaultBudgetBytes);

}  // namespace cubesum
