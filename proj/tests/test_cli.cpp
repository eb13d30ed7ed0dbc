#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "secmom/cli.hpp"
#include "secmom/ssyt_count.hpp"

using secmom::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("compute-i examples") {
  auto r = call({"compute-i", "--ensemble", "sym", "--k", "1", "--n", "4", "--N", "5", "--engine", "auto"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "ensemble,k,m,n,N,engine,value,stderr,seed");
  CHECK(l[1] == "sym,1,4,4,5,auto:closed,3,,");
  r = call({"compute-i", "--ensemble", "orth", "--k", "2", "--n", "0", "--N", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out)[1] == "orth,2,0,0,3,auto:closed,2,,");
}

TEST_CASE("compute-i engines agree over a range") {
  std::vector<std::string> values;
  for (const char* eng : {"ssyt", "series", "lattice", "auto"}) {
    auto r = call({"compute-i", "--ensemble", "orth", "--k", "2", "--n", "0:10", "--N", "2", "--engine", eng, "--jobs", "3"});
    REQUIRE(r.code == 0);
    std::string col;
    for (const auto& line : lines(r.out)) col += line.substr(line.rfind(',', line.size() - 3)) + ";";
    values.push_back(col);
  }
  CHECK(values[0] == values[1]);
  CHECK(values[0] == values[2]);
}

TEST_CASE("closed engine outside its range is a usage error") {
  auto r = call({"compute-i", "--ensemble", "sym", "--k", "2", "--n", "4", "--N", "3", "--engine", "closed"});
  CHECK(r.code == 1);
  CHECK(r.err.find("closed form not valid") != std::string::npos);
  r = call({"compute-i", "--ensemble", "orth", "--k", "1", "--n", "0", "--N", "3", "--engine", "closed"});
  CHECK(r.code == 1);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 1);
  CHECK(call({"no-such-command"}).code == 1);
  CHECK(call({"fit-gamma", "--c", "1/0"}).code == 1);
  CHECK(call({"fit-gamma", "--c", "one half"}).code == 1);
  CHECK(call({"fit-gamma", "--ensemble", "sym", "--k", "1", "--c", "1/3"}).code == 0);
  CHECK(call({"ff-identities", "--q", "9", "--k", "4"}).code == 1);
  CHECK(call({"compute-i", "--engine", "bogus"}).code == 1);
  CHECK(call({"compute-i", "--n", "5:2"}).code == 1);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("grid reproduces the tableau table") {
  auto r = call({"grid", "--ensemble", "sym", "--k", "1", "--N", "2"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 26);
  const auto J = secmom::ssyt::J_grid(secmom::Ensemble::symplectic, 1, 2);
  for (unsigned m = 0; m <= 4; ++m)
    for (unsigned n = 0; n <= 4; ++n) {
      const std::string expect = "sym,1," + std::to_string(m) + "," + std::to_string(n) + ",2,auto:ssyt," +
                                 J[m][n].get_str() + ",,";
      CHECK(l[1 + 5 * m + n] == expect);
    }
  auto s = call({"grid", "--ensemble", "sym", "--k", "1", "--N", "2", "--engine", "series"});
  REQUIRE(s.code == 0);
  for (std::size_t i = 1; i < l.size(); ++i) {
    std::string a = l[i], b = lines(s.out)[i];
    CHECK(a.replace(a.find("auto:ssyt"), 9, "") == b.replace(b.find("series"), 6, ""));
  }
}

TEST_CASE("fit-gamma") {
  auto r = call({"fit-gamma", "--ensemble", "orth", "--k", "2", "--c", "1/3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[1] == "orth,2,,,,lattice-fit,1/1944,,,1/3");
  r = call({"fit-gamma", "--ensemble", "orth", "--k", "2", "--c", "1/3", "--degree", "3", "--count", "7"});
  CHECK(r.code == 2);
  CHECK(r.err.find("fit failure") != std::string::npos);
}

TEST_CASE("JSON output and reproducibility") {
  const std::vector<std::string> args{"gamma-mc", "--ensemble", "sym", "--k", "1", "--c", "1/4",
                                      "--samples", "5000", "--seed", "18446744073709551615",
                                      "--jobs", "2", "--format", "json"};
  auto a = call(args), b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["meta"]["version"] == secmom::cli::kVersion);
  CHECK(doc["meta"]["config"]["seed"] == "18446744073709551615");
  CHECK(doc["rows"][0]["engine"] == "mc:uniform");
  CHECK(doc["rows"][0]["value"].is_number());
  CHECK(doc["rows"][0]["seed"] == "18446744073709551615");
}

TEST_CASE("config file with flag override") {
  const std::string path = "test_cli_config.ini";
  {
    std::ofstream f(path);
    f << "ensemble=orth\nk=2\nN=3\nn=1\n";
  }
  auto r = call({"compute-i", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[1] == "orth,2,1,1,3,auto:closed,8,,");
  r = call({"compute-i", "--config", path, "--n", "0"});
  CHECK(lines(r.out)[1] == "orth,2,0,0,3,auto:closed,2,,");
  CHECK(call({"compute-i", "--config", "missing.ini"}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("output file") {
  const std::string path = "test_cli_out.csv";
  auto r = call({"compute-i", "--k", "1", "--n", "2", "--N", "3", "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(row == "sym,1,2,2,3,auto:closed,2,,");
  std::remove(path.c_str());
}

TEST_CASE("function-field subcommands") {
  auto r = call({"ff-identities", "--q", "3", "--k", "4", "--l", "2", "--n-max", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = call({"ff-variance-sectors", "--q", "3", "--k", "4", "--l", "2", "--n", "0:2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 4);
  r = call({"ff-variance-qr", "--q", "5", "--g", "1", "--k", "1", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out)[1] == "5,1,1,1,1.25,1.25,1");
  CHECK(call({"ff-variance-qr", "--q", "5", "--g", "1", "--k", "1", "--n", "3"}).code == 1);
  r = call({"compare-qsweep", "--kind", "qr", "--qs", "5,7", "--g", "1", "--k", "1", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.err.find("trend n=1") != std::string::npos);
}

TEST_CASE("rmt-mc") {
  auto r = call({"rmt-mc", "--ensemble", "orth", "--k", "1", "--n", "1", "--N", "1", "--samples", "2000", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out)[1].rfind("orth,1,1,1,1,rmt-mc,", 0) == 0);
}

TEST_CASE("self-check") {
  auto r = call({"self-check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("discrepancy,orth,1,") != std::string::npos);
  CHECK(r.out.find("validity-boundary") != std::string::npos);
}
