#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "dal/cli_support.hpp"
#include "dal/errors.hpp"

using namespace dal;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the dal binary with the given arguments, capturing stdout.
Run run_dal(const std::string& args) {
  const std::string cmd = std::string(DAL_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("alpha grammar") {
  CHECK(parse_alpha("golden").take(3) == std::vector<Digit>{1, 1, 1});
  CHECK(parse_alpha("[0;3,7,15]").terminates());
  CHECK(parse_alpha("[0; 3, 7]").take(2) == std::vector<Digit>{3, 7});
  CHECK(parse_alpha("periodic:1,2|3").take(5) == std::vector<Digit>{1, 2, 3, 3, 3});
  CHECK(parse_alpha("periodic:|2").take(2) == std::vector<Digit>{2, 2});
  const auto r = parse_alpha("random:5", AlphaOptions{4000, 100});
  CHECK(r.horizon() >= 100);
  CHECK(r.label() == "random:5");
  CHECK(parse_alpha("construct:3/10", AlphaOptions{100000, 500}).horizon() >= 500);
  for (const char* bad : {"", "silver", "[0;1,0]", "[1;2]", "periodic:1,2", "random:x", "construct:2",
                          "file:/nonexistent/digits"}) {
    CHECK_THROWS_AS(parse_alpha(bad), Error);
  }
}

TEST_CASE("digit files") {
  const std::string path = "test_cli_digits.txt";
  std::ofstream(path) << "3, 1 4\n1,5\n";
  const auto pq = parse_alpha("file:" + path);
  CHECK(pq.take(5) == std::vector<Digit>{3, 1, 4, 1, 5});
  CHECK(pq.horizon() == 5);
  std::remove(path.c_str());
}

TEST_CASE("target grammar") {
  CHECK(parse_target("1/2").str() == "1/2");
  CHECK(parse_target("0.75").str() == "3/4");
  CHECK(parse_target("S(1)").str() == "(5 - sqrt(5))/10");
  CHECK_THROWS_AS(parse_target("S(0)"), UsageError);
  CHECK_THROWS_AS(parse_target("half"), UsageError);
  CHECK(parse_digit_list("3,1,4") == std::vector<Digit>{3, 1, 4});
  CHECK(parse_digit_list("").empty());
}

TEST_CASE("CSV reading and SVG rendering") {
  std::istringstream psi("nu,t_start,t_end,psi_lo,psi_hi\n1,1,2,0.38,0.39\n2,2,3,0.23,0.24\n");
  const CsvTable t = read_csv(psi);
  CHECK(t.column("t_end") == 2);
  CHECK(t.column("missing") == -1);
  const std::string svg = render_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("data-t=\"2\"") != std::string::npos);
  CHECK(render_svg(CsvTable{{"x", "y"}, {}}).find("</svg>") != std::string::npos);
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), UsageError);
}

TEST_CASE("command outputs") {
  const Run sz = run_dal("sz --z 2");
  CHECK(sz.code == 0);
  CHECK(sz.out == "z,S_exact,S_lo,S_hi\n2,1/2,0.5,0.5\n");
  const Run conv = run_dal("convergents --alpha golden --n 3");
  CHECK(conv.out == "nu,p,q\n-1,1,0\n0,0,1\n1,1,1\n2,1,2\n3,2,3\n");
  CHECK(run_dal("psi --alpha golden --t 13 --trace").out.find("5,8,13,") != std::string::npos);
  CHECK(run_dal("integral --alpha golden --t 100 --format json").out.find("\"I_err\"") != std::string::npos);
  CHECK(run_dal("quadrature --resolution 64").code == 0);
  CHECK(run_dal("orbit --alpha random:3 --n 200 --y0 1/3 --check").code == 0);
  CHECK(run_dal("construct --d 0.4 --n 5000").out.find("\"envelope_respected\": true") != std::string::npos);
  CHECK(run_dal("psi --help").code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run_dal("").code == 1);
  CHECK(run_dal("psi --alpha golden").code == 1);
  CHECK(run_dal("sz --z 0").code == 1);
  CHECK(run_dal("psi --alpha silver --t 3").code == 1);
  CHECK(run_dal("construct --d 0.2").code == 1);
  CHECK(run_dal("gsum --alpha random:3 --bits 256 --n 400").code == 2);
  CHECK(run_dal("psi --alpha '[0;1,1]' --t 1000").code == 0);
  CHECK(run_dal("gsum --alpha file:/dev/null --n 5").code != 0);
}

TEST_CASE("every emitted CSV is accepted by plot") {
  const std::string path = "test_cli_roundtrip.csv";
  for (const char* cmd :
       {"digits --alpha golden", "convergents --alpha golden", "psi --alpha golden --t 5/2",
        "psi --alpha golden --t 100 --trace", "integral --alpha golden --t 100", "gsum --alpha golden --n 30",
        "gsum --alpha golden --n 30 --trace", "sz --z 3", "construct --d 0.4 --n 2000 --trace",
        "orbit --alpha golden --n 10", "birkhoff --alpha golden --n 10", "quadrature --resolution 64",
        "levy --alpha golden --n 100"}) {
    CHECK_MESSAGE(run_dal(std::string(cmd) + " --out " + path).code == 0, cmd);
    const Run plot = run_dal("plot --in " + path);
    CHECK_MESSAGE(plot.code == 0, cmd);
    CHECK(plot.out.find("</svg>") != std::string::npos);
  }
  CHECK(run_dal("experiment levy --trials 3 --n 300 --csv " + path).code == 0);
  CHECK(run_dal("plot --in " + path).code == 0);
  std::remove(path.c_str());
}

TEST_CASE("psi at 5/2 for the golden ratio and deterministic experiments") {
  const Run psi = run_dal("psi --alpha golden --t 5/2");
  CHECK(psi.out.find("\n2,2,0.2360679774997") != std::string::npos);
  const std::string cmd = "experiment theorem1 --trials 10 --n 1000 --seed 42";
  const Run a = run_dal(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == run_dal(cmd + " --workers 3").out);
}
