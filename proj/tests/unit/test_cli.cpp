#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// Exit-code contract of the installed binary: 0 pass, 1 usage, 2 divergence,
// 3 check failure.

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(SAMLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("run: Fig 4a settings converge and exit 0") {
  std::string out = temp_file("samlab_cli_run.csv");
  int code = run_cli("run --fn sine --opt det-sam --rho 1 --eta 0.5 --x0 0.4 --steps 10000 --out " +
                     out);
  CHECK(code == 0);
  std::ifstream is(out);
  REQUIRE(is.good());
  std::string line, last;
  std::getline(is, line);
  CHECK(line == "t,x0,f,grad_norm");
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  double final_x = std::stod(last.substr(last.find(',') + 1));
  CHECK(std::abs(final_x - 0.7) <= 1e-6);
  std::filesystem::remove(out);
}

TEST_CASE("run: blow-up regime exits 2") {
  // At eta > 2/beta the case-3 iterates grow geometrically and trip the
  // 1e12 divergence guard within a few hundred steps.
  CHECK(run_cli("run --fn quad-lb-3 --beta 1 --opt det-sam --rho 1 --eta 2.5 --x0 1 --steps 1000") ==
        2);
  // At the boundary eta = 2/beta the growth is linear (|x| ~ 2 rho t), far
  // below the guard over 1000 steps; the run completes.
  CHECK(run_cli("run --fn quad-lb-3 --beta 1 --opt det-sam --rho 1 --eta 2 --x0 1 --steps 1000") ==
        0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("run") == 1);                                // missing --fn
  CHECK(run_cli("run --fn no-such-fn --steps 10") == 1);     // unknown id
  CHECK(run_cli("check thm99") == 1);                        // unknown theorem
  CHECK(run_cli("virtual --fn hyperbola --out /tmp/h.csv") == 1);  // 2-D without --no-integrate
  CHECK(run_cli("definitely-not-a-subcommand") == 1);
  CHECK(run_cli("run --fn sine --no-such-flag 3") == 1);  // unknown flags rejected
}

TEST_CASE("check: trapped interval passes and writes a report") {
  std::string out = temp_file("samlab_cli_report.json");
  int code = run_cli(
      "check thm42 --beta 5 --rho 1 --sigma 10 --eta 0.06 --steps 20000 --trials 3 --out " + out);
  CHECK(code == 0);
  std::ifstream is(out);
  REQUIRE(is.good());
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"pass\": true") != std::string::npos);
  CHECK(text.find("margins") != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("check: thm34 bound domination on sine exits 0") {
  CHECK(run_cli("check thm34 --fn sine --beta 1 --rho 1 --x0 0.4 --sweep 10,100,1000") == 0);
}

TEST_CASE("virtual: sine dump brackets the set-Y zero crossing near 0.7") {
  std::string out = temp_file("samlab_cli_virtual.csv");
  // scientific notation is accepted for numeric flags
  int code =
      run_cli("virtual --fn sine --rho 1 --xmin 0.5 --xmax 0.9 --grid 1e-3 --out " + out);
  CHECK(code == 0);
  std::ifstream is(out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,f,grad_f,G_f,J_f");
  bool crossed = false;
  double prev_g = 0.0, prev_x = 0.0;
  bool first = true;
  while (std::getline(is, line)) {
    size_t p1 = line.find(','), p4 = 0;
    double x = std::stod(line.substr(0, p1));
    // G_f is the 4th column.
    size_t pos = 0;
    for (int k = 0; k < 3; ++k) pos = line.find(',', pos) + 1;
    p4 = line.find(',', pos);
    double g = std::stod(line.substr(pos, p4 - pos));
    if (!first && prev_g * g <= 0.0 && std::abs(x - 0.7) <= 0.002 &&
        std::abs(prev_x - 0.7) <= 0.002)
      crossed = true;
    prev_g = g;
    prev_x = x;
    first = false;
  }
  CHECK(crossed);
  std::filesystem::remove(out);
}

TEST_CASE("reproduce fig4a exits 0 and writes files") {
  std::string dir = temp_file("samlab_cli_figs");
  CHECK(run_cli("reproduce fig4a --out " + dir) == 0);
  CHECK(std::filesystem::exists(dir + "/fig4a_trajectory.csv"));
  CHECK(std::filesystem::exists(dir + "/fig4a_x_vs_epoch.csv"));
  CHECK(std::filesystem::exists(dir + "/fig4a_config.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("list-functions exits 0") { CHECK(run_cli("list-functions") == 0); }

TEST_CASE("help enumerates catalog and theorem ids") {
  std::string out = temp_file("samlab_help.txt");
  int status = std::system((std::string(SAMLAB_CLI_PATH) + " --help > " + out + " 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  std::ifstream is(out);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  for (const char* id : {"quad-lb-1", "quad-lb-2", "quad-lb-3", "sine", "nonsmooth-max",
                         "sc-counter", "cvx-counter", "hyperbola"})
    CHECK(text.find(id) != std::string::npos);
  for (const char* id : {"thm31", "thm32", "thm33", "thm34", "thm35", "thm36", "thm41", "thm42",
                         "thm44", "thm45", "thm46", "thm47"})
    CHECK(text.find(id) != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("sweep accepts an experiment config file") {
  std::string cfg = temp_file("samlab_sweep_cfg.json");
  std::string out = temp_file("samlab_sweep_fit.json");
  {
    std::ofstream os(cfg);
    os << R"({
      "function": {"id": "quad-lb-2", "beta": 1.0, "rho": 1.0},
      "optimizer": {"variant": "det-sam", "rho": 1.0, "eta": 1.0, "seed": 5},
      "metric": "min-suboptimality",
      "sweep": [16, 32, 64, 128, 256],
      "trials": 1,
      "schedule": "lb-case2"
    })";
  }
  CHECK(run_cli("sweep --config " + cfg + " --out " + out) == 0);
  std::ifstream is(out);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text.find("exponent") != std::string::npos);
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}

TEST_CASE("SAMLAB_SEED env var is honored") {
  std::string out1 = temp_file("samlab_seed1.csv");
  std::string out2 = temp_file("samlab_seed2.csv");
  std::string base = " run --fn sc-counter --beta 5 --sigma 10 --opt m-sam --rho 1 --eta 0.06 "
                     "--x0 1.0 --steps 200 --out ";
  int c1 = std::system(("SAMLAB_SEED=7 " + std::string(SAMLAB_CLI_PATH) + base + out1 +
                        " > /dev/null 2>&1").c_str());
  int c2 = std::system(("SAMLAB_SEED=8 " + std::string(SAMLAB_CLI_PATH) + base + out2 +
                        " > /dev/null 2>&1").c_str());
  REQUIRE(WEXITSTATUS(c1) == 0);
  REQUIRE(WEXITSTATUS(c2) == 0);
  std::ifstream f1(out1), f2(out2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 != s2);
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
}
