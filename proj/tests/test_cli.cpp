#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cubesum/basegen.hpp"
#include "cubesum/cli.hpp"

using namespace cubesum;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out = split(s, '\n');
  REQUIRE(!out.empty());
  CHECK(out.back().empty());  // every line is newline-terminated
  out.pop_back();
  return out;
}

using Table = std::vector<std::vector<std::string>>;

// Re-parses CSV output: rectangular, header first, cells decimal, boolean,
// or one of the known words.
Table parse_csv(const std::string& text) {
  Table t;
  for (const auto& l : lines(text)) t.push_back(split(l, ','));
  REQUIRE(!t.empty());
  for (const auto& row : t) CHECK(row.size() == t.front().size());
  return t;
}

bool decimal(const std::string& s) { return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos; }

u64 to_u64(const std::string& s) {
  REQUIRE(decimal(s));
  return std::stoull(s);
}

// Parts from column `first` onwards; empty cells end the tuple.
std::vector<u64> parts_from(const std::vector<std::string>& row, std::size_t first, std::size_t count) {
  std::vector<u64> out;
  for (std::size_t i = first; i < first + count && i < row.size(); ++i)
    if (!row[i].empty()) out.push_back(to_u64(row[i]));
  return out;
}

}  // namespace

TEST_CASE("documented examples") {
  const Run rep = run({"represent", "--target", "89", "--base", "primes", "--k", "4"});
  CHECK(rep.code == 0);
  CHECK(rep.out == "target,part1,part2,part3,part4\n89,2,3,3,3\n");

  const Run mem = run({"membership", "--n", "89"});
  CHECK(mem.code == 0);
  const Table t = parse_csv(mem.out);
  CHECK(t[0] == std::vector<std::string>{"n", "is_even", "mod9", "mod7", "in_n"});
  CHECK(t[1] == std::vector<std::string>{"89", "false", "8", "5", "false"});

  const Run exc = run({"exceptional", "--b-max", "1000"});
  CHECK(exc.code == 0);
  const auto rows = lines(exc.out);
  REQUIRE(rows.size() == 22);
  CHECK(rows.front() == "b");
  const std::vector<std::string> expect = {"1",  "2",  "3",  "4",  "5",  "6",  "8",  "9",  "10", "11", "15",
                                           "16", "17", "19", "22", "27", "29", "47", "58", "61", "71"};
  CHECK(std::vector<std::string>(rows.begin() + 1, rows.end()) == expect);
}

TEST_CASE("represent output re-parses and every row sums to its target") {
  for (const std::string base : {"primes", "integers"}) {
    for (const std::string k : {"3", "4", "5"}) {
      const Run r = run({"represent", "--target", "4104", "--base", base, "--k", k});
      REQUIRE(r.code == 0);
      const Table t = parse_csv(r.out);
      CHECK(t[0].size() == 1 + std::stoul(k));
      for (std::size_t i = 1; i < t.size(); ++i) {
        const auto parts = parts_from(t[i], 1, t[i].size() - 1);
        CHECK(parts.size() == std::stoul(k));
        CHECK(std::is_sorted(parts.begin(), parts.end()));
        CHECK(cube_sum(parts) == to_u64(t[i][0]));
        for (u64 p : parts) CHECK(in_base(base == "primes" ? BaseKind::Primes : BaseKind::PositiveIntegers, p));
      }
    }
  }
  // 4104 = 2^3 + 16^3 = 9^3 + 15^3
  const Table t = parse_csv(run({"represent", "--target", "4104", "--base", "integers", "--k", "3"}).out);
  CHECK(t.size() >= 1);
}

TEST_CASE("scan rows report a count and the first representation") {
  const Run r = run({"scan", "--lo", "1", "--hi", "3000", "--mode", "full", "--k", "4", "--base", "integers"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  CHECK(t[0] == std::vector<std::string>{"n", "count", "part1", "part2", "part3", "part4"});
  CHECK(t.size() == 3001);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(to_u64(t[i][0]) == i);
    const u64 count = to_u64(t[i][1]);
    const auto parts = parts_from(t[i], 2, 4);
    if (count == 0) {
      CHECK(parts.empty());
    } else {
      REQUIRE(parts.size() == 4);
      CHECK(cube_sum(parts) == i);
    }
  }
  // 4 = 1+1+1+1 is the first representable n
  CHECK(t[4][1] == "1");
  CHECK(t[3][1] == "0");
}

TEST_CASE("scan filters") {
  auto targets = [](const std::string& filter) {
    const Table t = parse_csv(run({"scan", "--lo", "1", "--hi", "200", "--filter", filter}).out);
    std::vector<u64> out;
    for (std::size_t i = 1; i < t.size(); ++i) out.push_back(to_u64(t[i][0]));
    return out;
  };
  for (u64 n : targets("prime")) CHECK(is_prime(n));
  for (u64 n : targets("even")) CHECK(n % 2 == 0);
  CHECK(targets("all").size() == 200);
  CHECK(targets("prime").size() == 46);
  CHECK(targets("even").size() == 100);
  // N below 200: even, mod 9 in {0,2,4,5,7}, mod 7 in {0,2,3,4,5}
  std::vector<u64> in_n;
  for (u64 n = 2; n <= 200; n += 2) {
    const u64 r9 = n % 9, r7 = n % 7;
    if (r9 != 1 && r9 != 3 && r9 != 6 && r9 != 8 && r7 != 1 && r7 != 6) in_n.push_back(n);
  }
  CHECK(targets("in-n") == in_n);
}

TEST_CASE("cube-targets lists one row per tuple") {
  const Run r = run({"cube-targets", "--b-max", "30", "--base", "integers"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  std::map<u64, std::size_t> rows_per_b;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const u64 b = to_u64(t[i][0]);
    const auto parts = parts_from(t[i], 2, 4);
    REQUIRE(parts.size() == 4);
    CHECK(cube_sum(parts) == b * b * b);
    ++rows_per_b[b];
    CHECK(to_u64(t[i][1]) >= 1);
  }
  for (const auto& [b, n] : rows_per_b) {
    const auto it = std::find_if(t.begin() + 1, t.end(), [&](const auto& row) { return row[0] == std::to_string(b); });
    CHECK(to_u64((*it)[1]) == n);
  }
  CHECK(rows_per_b.at(13) >= 2);
  CHECK(rows_per_b.at(26) >= 2);
  CHECK(rows_per_b.at(28) >= 2);
  CHECK(rows_per_b.count(11) == 0);

  const Table all = parse_csv(run({"cube-targets", "--b-max", "30", "--all"}).out);
  std::set<u64> bs;
  for (std::size_t i = 1; i < all.size(); ++i) bs.insert(to_u64(all[i][0]));
  CHECK(bs.size() == 30);
}

TEST_CASE("claim schema") {
  const Run r = run({"claim", "--id", "prop2", "--bound", "300"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  CHECK(t[0] == std::vector<std::string>{"claim_id", "bound", "exhaustive", "item_kind", "value", "part1", "part2",
                                         "part3", "part4"});
  REQUIRE(t.size() == 5);
  CHECK(t[1] == std::vector<std::string>{"prop2", "300", "true", "exponent", "5", "", "", "", ""});
  CHECK(t[2] == std::vector<std::string>{"prop2", "300", "true", "solution", "2", "2", "2", "2", "2"});
  CHECK(t[3] == std::vector<std::string>{"prop2", "300", "true", "solutions", "1", "", "", "", ""});
  CHECK(t[4] == std::vector<std::string>{"prop2", "300", "true", "counterexamples", "0", "", "", "", ""});

  const Table conv = parse_csv(run({"claim", "--id", "converse237", "--bound", "100"}).out);
  std::vector<u64> values;
  for (std::size_t i = 1; i < conv.size(); ++i)
    if (conv[i][3] == "counterexample") {
      values.push_back(to_u64(conv[i][4]));
      CHECK(cube_sum(parts_from(conv[i], 5, 4)) == values.back());
    }
  CHECK(values == std::vector<u64>{32, 70});

  const Table m7 = parse_csv(run({"claim", "--id", "m6", "--m", "7", "--bound", "50"}).out);
  CHECK(m7[1][3] == "exponent");
  CHECK(m7[1][4] == "7");

  for (const std::string id : {"eq1", "eq2", "prop1", "forward"}) {
    const Run ok = run({"claim", "--id", id});
    CHECK(ok.code == 0);
    parse_csv(ok.out);
  }
}

TEST_CASE("pruned and unpruned claim output agree") {
  const Run a = run({"claim", "--id", "eq2", "--bound", "1500"});
  const Run b = run({"claim", "--id", "eq2", "--bound", "1500", "--no-prune"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("table verify and reproduce") {
  const Run v = run({"table", "--id", "2", "--verify"});
  REQUIRE(v.code == 0);
  const Table t = parse_csv(v.out);
  CHECK(t.size() == 53);
  const auto row = std::find_if(t.begin(), t.end(), [](const auto& r) { return r[5] == "85012"; });
  REQUIRE(row != t.end());
  CHECK((*row)[6] != "verified");
  CHECK((*row)[11] == "8501");

  const Run rep = run({"table", "--id", "3", "--reproduce", "--bound", "40"});
  REQUIRE(rep.code == 0);
  const Table r = parse_csv(rep.out);
  CHECK(r[0] == std::vector<std::string>{"part1", "part2", "part3", "part4", "rhs"});
  bool found = false;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const auto parts = parts_from(r[i], 0, 4);
    const u64 b = to_u64(r[i][4]);
    CHECK(cube_sum(parts) == b * b * b);
    for (u64 p : parts) CHECK(is_prime(p));
    found = found || r[i] == std::vector<std::string>{"3", "3", "7", "11", "12"};
  }
  CHECK(found);
}

TEST_CASE("density report") {
  const Run r = run({"density", "--k", "4", "--base", "primes", "--max", "10000", "--filter", "in-n"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k,base,filter,max,representable,total,fraction\n4,primes,in-n,10000,86,1983,0.043368633\n");
}

TEST_CASE("output is identical across thread counts") {
  const std::vector<std::vector<std::string>> commands = {
      {"scan", "--lo", "2", "--hi", "20000", "--mode", "full"},
      {"scan", "--lo", "2", "--hi", "20000", "--base", "integers", "--k", "5"},
      {"cube-targets", "--b-max", "60", "--all"},
      {"exceptional", "--b-max", "300"},
      {"claim", "--id", "forward", "--bound", "5000"},
      {"claim", "--id", "eq2", "--bound", "3000"},
      {"table", "--id", "1", "--reproduce", "--bound", "5000"},
      {"density", "--k", "3", "--base", "integers", "--max", "20000"},
  };
  for (const auto& cmd : commands) {
    CAPTURE(cmd.front());
    const Run one = run(cmd);
    REQUIRE(one.code == 0);
    for (const std::string threads : {"2", "5"}) {
      auto with = cmd;
      with.insert(with.end(), {"--threads", threads});
      CHECK(run(with).out == one.out);
    }
    CHECK(run(cmd).out == one.out);
  }
}

TEST_CASE("global flags may precede the subcommand") {
  CHECK(run({"--threads", "3", "membership", "--n", "10"}).out == run({"membership", "--n", "10"}).out);
}

TEST_CASE("tsv and json-lines carry the same cells") {
  const std::vector<std::string> cmd = {"scan", "--lo", "80", "--hi", "95"};
  const Table csv = parse_csv(run(cmd).out);

  auto tsv_cmd = cmd;
  tsv_cmd.insert(tsv_cmd.end(), {"--format", "tsv"});
  Table tsv;
  for (const auto& l : lines(run(tsv_cmd).out)) tsv.push_back(split(l, '\t'));
  CHECK(tsv == csv);

  tsv_cmd.push_back("--no-header");
  CHECK(lines(run(tsv_cmd).out).size() == csv.size() - 1);

  auto json_cmd = cmd;
  json_cmd.insert(json_cmd.end(), {"--format", "json-lines"});
  const auto json = lines(run(json_cmd).out);
  REQUIRE(json.size() == csv.size() - 1);
  for (std::size_t i = 0; i < json.size(); ++i) {
    const auto obj = nlohmann::json::parse(json[i]);
    for (std::size_t c = 0; c < csv[0].size(); ++c) {
      const auto& v = obj.at(csv[0][c]);
      const std::string& cell = csv[i + 1][c];
      if (cell.empty())
        CHECK(v.is_null());
      else
        CHECK(v.get<u64>() == to_u64(cell));
    }
  }
}

TEST_CASE("--output writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "cubesum_cli_output_test.csv";
  const Run r = run({"membership", "--n", "10", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == run({"membership", "--n", "10"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 1 and name the flag") {
  struct Case {
    std::vector<std::string> args;
    std::string mention;
  };
  const std::vector<Case> cases = {
      {{"represent", "--target", "89", "--k", "6"}, "--k"},
      {{"represent", "--target", "89", "--base", "rationals"}, "--base"},
      {{"represent"}, "--target"},
      {{"scan", "--frobnicate"}, "--frobnicate"},
      {{"scan", "--filter", "odd"}, "--filter"},
      {{"scan", "--lo", "9", "--hi", "3"}, "--lo"},
      {{"--threads", "0", "membership", "--n", "3"}, "--threads"},
      {{"membership", "--n", "-3"}, "--n"},
      {{"membership", "--n", "3", "--format", "xml"}, "--format"},
      {{"membership", "--n", "3", "--no-header"}, "--no-header"},
      {{"claim", "--id", "prop3"}, "--id"},
      {{"claim", "--id", "prop1", "--m", "7"}, "--m"},
      {{"claim", "--id", "m6", "--m", "5"}, "--m"},
      {{"table", "--id", "5", "--verify"}, "--id"},
      {{"table", "--id", "1"}, "--verify"},
      {{"table", "--id", "1", "--verify", "--reproduce"}, "--reproduce"},
      {{"density", "--filter", "prime"}, "--filter"},
      {{"membership", "--n", "3", "--output", "/nonexistent-dir/x.csv"}, "--output"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args);
    const Run r = run(c.args);
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());
    CHECK(r.err.find(c.mention) != std::string::npos);
  }
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("range and budget refusals exit 2 and name the quantity") {
  const Run pow = run({"claim", "--id", "m6", "--m", "6", "--bound", "2000"});
  CHECK(pow.code == kExitRefused);
  CHECK(pow.err.find("p = 1451") != std::string::npos);
  CHECK(pow.out.empty());

  const Run big = run({"represent", "--target", "9223372036854775808"});
  CHECK(big.code == kExitRefused);
  CHECK(big.err.find("max_sum") != std::string::npos);

  const Run budget = run({"--budget", "1000", "scan", "--lo", "1", "--hi", "100000"});
  CHECK(budget.code == kExitRefused);
  CHECK(budget.err.find("budget") != std::string::npos);

  const Run cube = run({"exceptional", "--b-max", "3000000"});
  CHECK(cube.code == kExitRefused);
  CHECK(cube.err.find("cube") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("represent") != std::string::npos);
}
