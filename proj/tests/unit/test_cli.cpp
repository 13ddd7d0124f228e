#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfpm/divided_congruence.hpp"
#include "mfpm_cli/cli.hpp"
#include "mfpm_cli/report.hpp"

using namespace mfpm;

namespace {

const std::string kFixtures = MFPM_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

std::string field(const std::string& text, const std::string& kind, const std::string& key) {
  for (const auto& r : cli::parse_report(text)) {
    if (r.get("record") == kind && !r.get(key).empty()) return r.get(key);
  }
  return "";
}

}  // namespace

TEST(Cli, SturmBound) {
  auto r = run_cli({"sturm", "52", "2", "--g0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "sturm", "bound"), "14");
  EXPECT_EQ(run_cli({"sturm", "52", "2", "--g0", "--g1"}).code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli({"classify", "missing.basis", "--p", "3", "--m", "1"}).code, 2);
  EXPECT_EQ(run_cli({"sturm", "52", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"obstruct", "--level", "9", "--p", "3", "--m", "2", "--char", "9:x"}).code, 2);
  EXPECT_EQ(run_cli({"halfsum", fx("S_2_G0_52.basis"), "--f", "newforms_26_52.forms:9", "--g",
                     "gtilde_52.forms", "--p", "3"})
                .code,
            2);
}

TEST(Cli, HeckeMatrix) {
  auto r = run_cli({"hecke-matrix", fx("S_2_G0_26.basis"), "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = cli::parse_report(r.out);
  int rows = 0;
  for (const auto& rec : records) {
    for (const auto& [k, v] : rec.fields()) rows += k == "row";
  }
  EXPECT_EQ(rows, 2);
}

TEST(Cli, ClassifyAndHalfSum) {
  auto c = run_cli({"classify", fx("S_2_G0_52.basis"), "--p", "3", "--m", "2", "--catalog",
                    fx("newforms_26_52.forms")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(field(c.out, "classify", "systems"), "4");
  EXPECT_NE(c.out.find("eigenvalues: 1:1 5:5 7:4 11:7"), std::string::npos);
  EXPECT_NE(c.out.find("provenance: weak-only"), std::string::npos);

  auto h = run_cli({"halfsum", fx("S_2_G0_52.basis"), "--f", "newforms_26_52.forms:1", "--g",
                    "gtilde_52.forms", "--p", "3"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(field(h.out, "halfsum", "eigenvalues"), "1:1 5:5 7:4 11:7");
  EXPECT_EQ(field(h.out, "halfsum", "possibly_liftable"), "no");

  // f and g are not congruent mod 3
  auto bad = run_cli({"halfsum", fx("S_2_G0_52.basis"), "--f", "newforms_26_52.forms:1", "--g",
                      "newforms_26_52.forms:2", "--p", "3"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, Obstruct) {
  auto b = run_cli({"obstruct", "--level", "9", "--p", "3", "--m", "2", "--char", "9:1"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(field(b.out, "obstruction", "verdict"), "blocked");
  EXPECT_EQ(field(b.out, "obstruction", "ambient_size"), "27");
  auto n = run_cli({"obstruct", "--level", "9", "--p", "3", "--m", "1", "--char", "9:1"});
  EXPECT_EQ(field(n.out, "obstruction", "verdict"), "not_blocked_by_this_test");
}

TEST(Cli, DivideAndEqualize) {
  auto d = run_cli({"divide", fx("newforms_26_52.forms:1"), fx("newforms_26_52.forms:1"), "--pi",
                    "2", "--m", "1", "--show", "9"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(field(d.out, "divide", "coefficients"), "1,0,0,0,2,0,-2,0,-3");
  auto f = run_cli({"divide", fx("newforms_26_52.forms:1"), "--pi", "3", "--m", "1"});
  EXPECT_EQ(f.code, 1);
  EXPECT_EQ(field(f.out, "divide", "first_failure"), "1");

  const auto out = (std::filesystem::temp_directory_path() / "mfpm_cli_equalized.forms").string();
  auto e = run_cli({"equalize", fx("S_12_G0_1.basis:1"), fx("S_16_G0_1.basis:1"), "--p", "5", "--m",
                    "1", "--out", out});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(field(e.out, "equalize", "target_weight"), "16");
  const auto file = read_space_file(out);
  EXPECT_EQ(file.integer_rows().size(), 2u);
  EXPECT_EQ(run_cli({"equalize", fx("S_12_G0_1.basis:1"), fx("S_16_G0_1.basis:1"), "--p", "5",
                     "--m", "2"})
                .code,
            1);
}

TEST(Cli, StripLevel) {
  // Delta times the weight 20 series congruent to 1 mod 25, declared at level 5.
  const auto delta = read_space_file(fx("S_12_G0_1.basis")).integer_rows().at(0);
  const auto planted = multiply(delta, equalizing_series(5, 2, delta.truncation()));
  auto write = [&](const std::string& name, int64_t bump) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << "space level=5 weight=32 group=g0 char=none trunc=" << planted.truncation()
        << " coeffring=int\n";
    for (int64_t n = 1; n <= planted.truncation(); ++n) {
      out << (n > 1 ? "," : "") << planted[n] + (n == 150 ? bump : 0);
    }
    out << "\n";
    return path;
  };
  const auto path = write("mfpm_cli_planted.forms", 0);
  auto r = run_cli({"strip-level", path, "--target-level", "1", "--cmax", "40", "--p", "5", "--m",
                    "2", "--basis-dir", kFixtures});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_EQ(field(r.out, "strip-level", "weight"), "12");

  // a_150 moved off the level one lattice
  const auto moved = write("mfpm_cli_moved.forms", 1);
  auto miss = run_cli({"strip-level", moved, "--target-level", "1", "--cmax", "40", "--p", "5",
                       "--m", "2", "--basis-dir", kFixtures});
  EXPECT_EQ(miss.code, 1);
  EXPECT_NE(miss.out.find("search exhausted"), std::string::npos);

  // no level one data below weight 12
  EXPECT_EQ(run_cli({"strip-level", path, "--target-level", "1", "--cmax", "11", "--p", "5", "--m",
                     "2", "--basis-dir", kFixtures})
                .code,
            2);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"classify", fx("S_2_G0_52.basis"), "--p", "3", "--m", "2"};
  const auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
