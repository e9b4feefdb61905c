#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HEAVYTAIL_CLI_PATH
#error "HEAVYTAIL_CLI_PATH must point at the command line binary"
#endif

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(HEAVYTAIL_CLI_PATH) + " " + args + " > cli_stdout.txt 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("basic run writes a csv with the standard prefix") {
  REQUIRE(run_cli("frechet --alpha 1.6 --n 60 --reps 4 --seed 7 --out cli_a.csv") == 0);
  std::string body = slurp("cli_a.csv");
  CHECK(first_line(body) == "experiment,alpha,beta,n,p,seed,replication,lambda1_scaled");
  CHECK(body.find("frechet,1.6,1,60,12,7,0,") != std::string::npos);
  CHECK(body.find("frechet,1.6,1,60,12,7,3,") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  REQUIRE(run_cli("approx --alpha 0.8 --n 50 --reps 3 --out cli_b1.csv") == 0);
  REQUIRE(run_cli("approx --alpha 0.8 --n 50 --reps 3 --out cli_b2.csv") == 0);
  CHECK(slurp("cli_b1.csv") == slurp("cli_b2.csv"));
  REQUIRE(run_cli("pointproc --alpha 1.6 --n 50 --reps 3 --format json --out cli_b1.json") == 0);
  REQUIRE(run_cli("pointproc --alpha 1.6 --n 50 --reps 3 --format json --out cli_b2.json") == 0);
  std::string j = slurp("cli_b1.json");
  CHECK(j == slurp("cli_b2.json"));
  CHECK(j.front() == '{');
  CHECK(j.find("\"provenance\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("frechet --no-such-flag 1 --out x.csv") == 2);
  CHECK(run_cli("frechet --alpha 1.6") == 2);  // missing --out
  CHECK(run_cli("frechet --alpha 1.6 --centering bogus --out x.csv") == 2);
  CHECK(run_cli("nosuchcommand") == 2);
  CHECK(run_cli("") == 2);  // a subcommand is required
  CHECK(run_cli("frechet --alpha 1.6 --dist paper:alpha=1.6 --out x.csv") == 2);
}

TEST_CASE("domain errors in the experiment parameters exit with 2") {
  CHECK(run_cli("eigvec --alpha 1.6 --n 50 --reps 2 --k 5000 --out x.csv") == 2);
  CHECK(run_cli("frechet --dist paper:alpha=9 --out x.csv") == 2);
  // light tails with non-negligible drift require an explicit centering
  CHECK(run_cli("frechet --dist paper:alpha=3.0 --n 60 --reps 2 --out x.csv") == 2);
  CHECK(run_cli("frechet --dist paper:alpha=3.0 --n 60 --reps 2 --centering n --out cli_c.csv") == 0);
}

TEST_CASE("help succeeds") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("ldp --help") == 0);
}

TEST_CASE("ldp check prints the estimate against its reference") {
  REQUIRE(run_cli("ldp --check kthorder --alpha 1.6 --n 100 --epsilon 0.4 --k 1 "
                  "--reps 400 --seed 3 --out cli_d.csv") == 0);
  std::string out = slurp("cli_stdout.txt");
  CHECK(out.find("estimate") != std::string::npos);
  CHECK(out.find("oracle") != std::string::npos);
  std::string body = slurp("cli_d.csv");
  CHECK(first_line(body) == "experiment,alpha,beta,n,p,seed,replication,estimate,std_err,oracle,threshold");
}

TEST_CASE("config file supplies defaults, flags override") {
  {
    std::ofstream cfg("cli_cfg.ini");
    cfg << "[frechet]\n"
        << "alpha=1.6\n"
        << "n=60\n"
        << "reps=2\n"
        << "out=cli_e.csv\n";
  }
  REQUIRE(run_cli("--config cli_cfg.ini frechet") == 0);
  std::string body = slurp("cli_e.csv");
  CHECK(body.find("frechet,1.6,1,60,12,") != std::string::npos);
  // command line wins over the file
  REQUIRE(run_cli("--config cli_cfg.ini frechet --n 80 --out cli_f.csv") == 0);
  std::string body2 = slurp("cli_f.csv");
  CHECK(body2.find("frechet,1.6,1,80,16,") != std::string::npos);
}
