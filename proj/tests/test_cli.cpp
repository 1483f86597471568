#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mindisc/records.hpp"
#include "mindisc/targets.hpp"

using namespace mindisc;

namespace {

int run_cli(const std::string& args) {
  const std::string command = std::string(MINDISC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("same command and seed give byte-identical csv") {
  CHECK(run_cli("pathology --c-max 4 --seed 3 --out cli_path_a.csv") == 0);
  CHECK(run_cli("pathology --c-max 4 --seed 3 --out cli_path_b.csv") == 0);
  CHECK(slurp("cli_path_a.csv") == slurp("cli_path_b.csv"));

  CHECK(run_cli("rates --n-max 32 --seeds 2 --out cli_rates_a.csv") == 0);
  CHECK(run_cli("rates --n-max 32 --seeds 2 --out cli_rates_b.csv") == 0);
  CHECK(slurp("cli_rates_a.csv") == slurp("cli_rates_b.csv"));

  CHECK(run_cli("stein-points --m 4 --pool-resolution 201 --out cli_sp_a.csv") == 0);
  CHECK(run_cli("stein-points --m 4 --pool-resolution 201 --out cli_sp_b.csv") == 0);
  CHECK(slurp("cli_sp_a.csv") == slurp("cli_sp_b.csv"));

  for (const char* name : {"cli_path_a.csv", "cli_path_b.csv", "cli_rates_a.csv",
                           "cli_rates_b.csv", "cli_sp_a.csv", "cli_sp_b.csv"})
    std::remove(name);
}

TEST_CASE("records csv round trips through the parser") {
  CHECK(run_cli("bias-correct --n-max 20 --seeds 2 --out cli_bias.csv") == 0);
  const RecordsFile file = read_records_csv("cli_bias.csv");
  CHECK(file.records.size() > 0);
  for (const auto& record : file.records) {
    const ExperimentRecord back = parse_record(to_csv_row(record));
    CHECK(back.value == record.value);
    CHECK(back.aux == record.aux);
  }
  // config echo precedes the header
  CHECK(!file.comments.empty());
  std::remove("cli_bias.csv");
}

TEST_CASE("invalid configuration exits with code 2") {
  CHECK(run_cli("weights --points missing_file.csv --objective bogus --out cli_w.csv") == 2);
  CHECK(run_cli("rates --config does_not_exist.cfg --out cli_r.csv") == 2);
  CHECK(run_cli("stein-points --kernel 'family=nope' --out cli_k.csv") == 2);
  CHECK(run_cli("thin --chain no_such_chain.csv --out cli_t.csv") == 2);
}

TEST_CASE("config file loses to explicit flags") {
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "c_max=6\nc_step=1\n";
  }
  CHECK(run_cli("pathology --config cli_test.cfg --c-max 2 --out cli_cfg.csv") == 0);
  const RecordsFile file = read_records_csv("cli_cfg.csv");
  CHECK(file.records.size() == 3);  // c = 0, 1, 2
  bool saw_echo = false;
  for (const auto& line : file.comments)
    if (line == "# c_max=2") saw_echo = true;
  CHECK(saw_echo);
  std::remove("cli_test.cfg");
  std::remove("cli_cfg.csv");
}

TEST_CASE("thin consumes chain csv with either target or stored scores") {
  const Target gauss = Target::std_gaussian(1);
  const PointSet chain = gauss.sample(40, 6);
  Matrix scores(40, 1);
  for (Eigen::Index i = 0; i < 40; ++i) scores.row(i) = gauss.score(chain.point(i)).transpose();

  write_chain_csv("cli_chain_plain.csv", chain);
  write_chain_csv("cli_chain_scored.csv", chain, &scores);

  CHECK(run_cli("thin --chain cli_chain_plain.csv --m 5 "
                "--target 'target=std_gaussian dim=1' --out cli_thin_a.csv") == 0);
  CHECK(run_cli("thin --chain cli_chain_scored.csv --m 5 --out cli_thin_b.csv") == 0);

  // both routes pick identical states; only the config echo differs
  auto rows = [](const std::string& path) {
    std::ifstream in(path);
    std::string line, body;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') body += line + "\n";
    return body;
  };
  CHECK(rows("cli_thin_a.csv") == rows("cli_thin_b.csv"));

  // thinning without any score source is a config error
  CHECK(run_cli("thin --chain cli_chain_plain.csv --m 5 --out cli_thin_c.csv") == 2);

  for (const char* name : {"cli_chain_plain.csv", "cli_chain_scored.csv", "cli_thin_a.csv",
                           "cli_thin_b.csv"})
    std::remove(name);
}

TEST_CASE("star-disc command") {
  {
    std::ofstream pts("cli_single_point.csv");
    pts << "x1,x2\n0.5,0.5\n";
  }
  CHECK(run_cli("star-disc --points cli_single_point.csv --out cli_star.csv") == 0);
  std::ifstream in("cli_star.csv");
  std::string line, data;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("metric", 0) != 0) data = line;
  CHECK(data.rfind("star_disc,1,2,0.75,", 0) == 0);

  CHECK(run_cli("star-disc --grid-midpoint 10 --out cli_star_grid.csv") == 0);
  const std::string grid_csv = slurp("cli_star_grid.csv");
  CHECK(grid_csv.find("bound_ok=1") != std::string::npos);

  CHECK(run_cli("star-disc --out cli_star_none.csv") == 2);

  std::remove("cli_single_point.csv");
  std::remove("cli_star.csv");
  std::remove("cli_star_grid.csv");
}

TEST_CASE("weights command emits the optimal table") {
  {
    std::ofstream pts("cli_weights_points.csv");
    pts << "x1\n0.5\n";
  }
  CHECK(run_cli("weights --points cli_weights_points.csv --objective mmd "
                "--target 'target=uniform_unit_cube dim=1' "
                "--kernel 'family=wendland1 dim=1' --out cli_weights.csv") == 0);
  std::ifstream in("cli_weights.csv");
  std::string line, data;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("step", 0) != 0) data = line;
  // step,index,x1,weight with weight = mu(0.5)/k(0.5,0.5) = 0.75
  std::istringstream cells(data);
  std::string cell;
  std::getline(cells, cell, ',');
  CHECK(cell == "1");
  std::getline(cells, cell, ',');
  CHECK(cell == "0");
  std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == 0.5);
  std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(0.75).epsilon(1e-8));

  std::remove("cli_weights_points.csv");
  std::remove("cli_weights.csv");
}

TEST_CASE("weights command with the ksd objective") {
  const Target gauss = Target::std_gaussian(1);
  write_chain_csv("cli_ksd_points.csv", gauss.sample(20, 2));
  CHECK(run_cli("weights --points cli_ksd_points.csv --objective ksd "
                "--target 'target=std_gaussian dim=1' "
                "--kernel 'family=imq sigma=1 beta=0.5 dim=1' --out cli_ksd_w.csv") == 0);
  // weights sum to one
  std::ifstream in("cli_ksd_w.csv");
  std::string line;
  double total = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("step", 0) == 0) continue;
    total += std::stod(line.substr(line.rfind(',') + 1));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  // ksd objective without target or stored scores cannot proceed
  CHECK(run_cli("weights --points cli_ksd_points.csv --objective ksd "
                "--kernel 'family=imq sigma=1 beta=0.5 dim=1' --out cli_ksd_w2.csv") == 2);
  std::remove("cli_ksd_points.csv");
  std::remove("cli_ksd_w.csv");
}
