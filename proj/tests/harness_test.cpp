#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qnd/approximations.hpp"
#include "qnd/error.hpp"
#include "qnd/figures.hpp"
#include "qnd/verify.hpp"

using namespace qnd;
using namespace qnd::cli;

namespace {

std::string to_csv(const Table& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

const std::vector<double>& row_at(const Table& t, std::size_t col, double value) {
  for (const auto& r : t.rows)
    if (std::abs(r[col] - value) < 1e-9) return r;
  throw std::runtime_error("no row");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QND_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qnd_test_" + std::to_string(::getpid()) + "_" + name);
}

RunConfig figure(int id) {
  RunConfig c;
  c.command = "figure";
  c.figure_id = id;
  if (id == 5) {
    const auto d = figure5_defaults();
    c.dn_min = d.dn_min;
    c.dn_max = d.dn_max;
    c.dn_step = d.dn_step;
  }
  return c;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV and JSON layouts") {
  Table t;
  t.command = "demo";
  t.add_param("x", 1.5);
  t.columns = {"a", "b"};
  t.rows = {{1.0, 2.0}, {3.0, std::nan("")}};
  const auto csv = to_csv(t);
  CHECK(csv.rfind("# qnd 0.1.0 schema 1\n# command: demo\n# params: x=1.5\n# columns: 2\na,b\n1,2\n3,nan\n", 0) == 0);

  std::ostringstream js;
  write_json(t, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["config"]["command"] == "demo");
  CHECK(doc["config"]["schema"] == 1);
  CHECK(doc["config"]["x"] == "1.5");
  CHECK(doc["columns"].size() == 2);
  CHECK(doc["rows"][1][1].is_null());
  CHECK(doc["version"] == "0.1.0");

  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("xml"), InvalidParam);
  CHECK_THROWS_AS(t.column_index("zzz"), InvalidParam);
  CHECK_THROWS_AS(write_file(t, Format::Csv, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("figure 3 fringe rows") {
  const auto t = figure_table(figure(3));
  REQUIRE(t.columns.size() == 7);
  const auto p_exact = t.column_index("P_exact"), p_approx = t.column_index("P_approx");
  const auto& r9 = row_at(t, 0, 9.0);
  const auto& r95 = row_at(t, 0, 9.5);
  CHECK(r9[p_approx] / r95[p_approx] == doctest::Approx(2.02).epsilon(0.03));
  CHECK(r9[p_exact] / r95[p_exact] == doctest::Approx(2.1262072278626323).epsilon(1e-9));
  CHECK(r9[t.column_index("P_mod")] * classical_probability(9.0, 9.0) == doctest::Approx(r9[p_exact]));
}

TEST_CASE("figure 4 dashed coherence is the classical amplitude") {
  const auto t = figure_table(figure(4));
  const CoherentParams p(3.0);
  const auto col = t.column_index("a_f_dashed");
  for (const auto& r : t.rows) CHECK(r[col] == std::abs(classical_coherence(p, 0.2, r[0])));
}

TEST_CASE("figure 1 dashed curves are classical") {
  const auto t = figure_table(figure(1));
  for (const auto& r : t.rows) CHECK(r[2] == classical_probability(9.0, r[0]));
}

TEST_CASE("figure 5 peaks near 1/(2 sqrt(pi))") {
  const auto t = figure_table(figure(5));
  const auto col = t.column_index("c_abs_norm");
  const auto best = std::max_element(t.rows.begin(), t.rows.end(),
                                     [&](const auto& a, const auto& b) { return a[col] < b[col]; });
  CHECK((*best)[0] == doctest::Approx(0.282).epsilon(1e-6));
  CHECK((*best)[t.column_index("c_signed_norm")] < 0.0);
}

TEST_CASE("sweep table") {
  RunConfig c;
  c.command = "sweep";
  const auto t = sweep_table(c);
  const auto q = t.column_index("q_bar");
  CHECK(row_at(t, 0, 0.4)[q] == doctest::Approx(0.0425).epsilon(3e-3));
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][q] < t.rows[i - 1][q]);

  c.dn_min = 0.27;
  c.dn_max = 0.29;
  c.dn_step = 0.0001;
  const auto fine = sweep_table(c);
  const auto col = fine.column_index("c_abs_norm");
  const auto best = std::max_element(fine.rows.begin(), fine.rows.end(),
                                     [&](const auto& a, const auto& b) { return a[col] < b[col]; });
  CHECK((*best)[0] == doctest::Approx(0.2821).epsilon(1e-6));
}

TEST_CASE("tables are deterministic") {
  CHECK(to_csv(figure_table(figure(2))) == to_csv(figure_table(figure(2))));
  RunConfig s;
  s.command = "sample";
  s.count = 50;
  s.seed = 42;
  CHECK(to_csv(sample_table(s)) == to_csv(sample_table(s)));
  s.trajectory = true;
  const auto traj = sample_table(s);
  CHECK(traj.rows.size() == 50);
  CHECK(to_csv(traj) == to_csv(sample_table(s)));
}

TEST_CASE("run configuration validation") {
  auto c = figure(6);
  CHECK_THROWS_AS(figure_table(c), InvalidParam);
  c = figure(1);
  c.alpha_magnitude = 0.0;
  CHECK_THROWS_AS(figure_table(c), InvalidParam);
  RunConfig s;
  s.command = "sample";
  s.delta_n = -0.1;
  CHECK_THROWS_AS(sample_table(s), InvalidParam);
  s.delta_n = 0.3;
  s.count = 0;
  CHECK_THROWS_AS(sample_table(s), InvalidParam);
  RunConfig w;
  w.command = "sweep";
  w.dn_max = 0.1;
  CHECK_THROWS_AS(sweep_table(w), InvalidParam);
}

TEST_CASE("verify filtering") {
  VerifyOptions o;
  o.only = "correlation";
  const auto r = run_acceptance(o);
  REQUIRE(r.size() == 2);
  CHECK(r[0].id == 7);
  CHECK(r[1].id == 8);
  CHECK(all_passed(r));

  o.only = "9";
  const auto one = run_acceptance(o);
  REQUIRE(one.size() == 1);
  CHECK(one[0].group == "parity");

  o.only = "nonsense";
  CHECK_THROWS_AS(run_acceptance(o), InvalidParam);
  o.only = "13";
  CHECK_THROWS_AS(run_acceptance(o), InvalidParam);

  std::ostringstream out;
  print_report(one, out);
  CHECK(out.str().find("PASS [ 9]") != std::string::npos);
}

TEST_CASE("phase-noise mutation is caught") {
  VerifyOptions o;
  o.only = "12";
  CHECK(all_passed(run_acceptance(o)));
  o.phase_noise = [](double dn) { return 1.01 / (4.0 * dn * dn); };
  CHECK_FALSE(all_passed(run_acceptance(o)));
}

TEST_CASE("tolerance scaling") {
  VerifyOptions o;
  o.only = "1";
  o.tol_scale = 1e-9;
  CHECK_FALSE(all_passed(run_acceptance(o)));
}

TEST_CASE("command line exit codes") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("verify --only parity") == 0);
  CHECK(run_cli("verify --only fringes") == 1);
  CHECK(run_cli("verify --only bogus") == 2);
  CHECK(run_cli("figure 9") == 2);
  CHECK(run_cli("figure 1 --format xml") == 2);
  CHECK(run_cli("sample --dn -1") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("figure 1 --out /nonexistent-dir/out.csv") == 3);

  const auto json = temp_path("fig3.json");
  REQUIRE(run_cli("figure 3 --format json --out " + json.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(json));
  CHECK(doc["config"]["command"] == "figure 3");
  CHECK(doc["columns"][0] == "n_m");
  CHECK(doc["rows"].size() == 1001);

  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  REQUIRE(run_cli("sample --count 200 --seed 9 --out " + a.string()) == 0);
  REQUIRE(run_cli("sample --count 200 --seed 9 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("# qnd 0.1.0 schema 1\n# command: sample\n", 0) == 0);
  for (const auto& p : {json, a, b}) std::filesystem::remove(p);
}
