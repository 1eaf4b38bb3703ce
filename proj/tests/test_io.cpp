#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "fblab/io.hpp"

using namespace fblab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("io_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("g17 keeps doubles round-trippable") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 3.141592653589793}) {
    const std::string s = format_g17(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(-0.5) == "-0.5");
}

TEST_CASE("field csv round-trips bit-exactly") {
  const Grid2 g(-1.0, 1.0, 0.0, 0.5, 9, 3);
  std::vector<double> vals(g.size());
  std::mt19937_64 rng(12345);
  for (double& v : vals) v = (double(rng() >> 11) * 0x1p-53) * 2.0 - 1.0;
  const ScalarField f(g, vals);

  TempFile tmp("field.csv");
  write_field_csv(f, tmp.path);
  const ScalarField back = read_field_csv(tmp.path);
  REQUIRE(back.grid().same_layout(g));
  for (std::size_t k = 0; k < vals.size(); ++k) CHECK(back.values()[k] == vals[k]);

  const std::string bytes = slurp(tmp.path);
  CHECK(bytes.find('\r') == std::string::npos);  // \n endings only
  // header carries nx,ny,xmin,xmax,ymin,ymax as values
  CHECK(bytes.substr(0, bytes.find('\n')) == "9,3,-1,1,0,0.5");
}

TEST_CASE("rewriting a field produces identical bytes") {
  const Grid2 g(0.0, 1.0, 0.0, 1.0, 4, 4);
  std::vector<double> vals(g.size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = 1.0 / (3.0 + double(k));
  const ScalarField f(g, vals);
  TempFile a("rep_a.csv"), b("rep_b.csv");
  write_field_csv(f, a.path);
  write_field_csv(f, b.path);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("mask and label csv layout") {
  const Grid2 g(0.0, 1.0, 0.0, 0.5, 3, 2);
  TempFile m("mask.csv");
  write_mask_csv(g, {1, 0, 1, 0, 0, 1}, m.path);
  CHECK(slurp(m.path) == "3,2,0,1,0,0.5\n1\n0\n1\n0\n0\n1\n");
  CHECK_THROWS_AS(write_mask_csv(g, {1, 0}, m.path), std::invalid_argument);

  TempFile l("label.csv");
  write_label_csv(g, {0, 1, 2, 2, 1, 0}, l.path);
  CHECK(slurp(l.path) == "3,2,0,1,0,0.5\n0\n1\n2\n2\n1\n0\n");
}

TEST_CASE("profile and table csv") {
  TempFile p("prof.csv");
  write_profile_csv({1.0, 2.0}, {0.5, 0.25}, "value", p.path);
  CHECK(slurp(p.path) == "r,value\n1,0.5\n2,0.25\n");
  CHECK_THROWS_AS(write_profile_csv({1.0}, {0.5, 0.25}, "value", p.path),
                  std::invalid_argument);

  TempFile t("table.csv");
  write_table_csv({"a", "b", "c"}, {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}}, t.path);
  CHECK(slurp(t.path) == "a,b,c\n1,2,3\n4,5,6\n");
  CHECK_THROWS_AS(write_table_csv({"a"}, {{1.0, 2.0}}, t.path), std::invalid_argument);
}

TEST_CASE("read errors are loud") {
  CHECK_THROWS_AS(read_field_csv("definitely_missing_file.csv"), std::runtime_error);
}
