// Black-box checks of the CLI contract: flag grammar, CSV/JSON formats,
// exit codes (0 success, 1 validation failure, 2 usage/parameter error).
// argv[1] is the path to the CLI binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace {

int failures = 0;

void expect(bool cond, const std::string& what) {
  if (!cond) {
    ++failures;
    std::printf("FAIL %s\n", what.c_str());
  }
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& cli, const std::string& args) {
  const std::string out_path = "/tmp/inar_cli_check_out";
  const std::string cmd = "\"" + cli + "\" " + args + " > " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = (rc == -1) ? -1 : (WIFEXITED(rc) ? WEXITSTATUS(rc) : -1);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.out = buf.str();
  return res;
}

std::vector<std::pair<int, double>> parse_csv(const std::string& text, const std::string& header) {
  std::vector<std::pair<int, double>> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) return rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) return {};
    rows.emplace_back(std::stoi(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::printf("usage: cli_checks <path-to-cli>\n");
    return 1;
  }
  const std::string cli = argv[1];

  {  // pmf: header, leading value, normalization
    const RunResult r = run(cli, "pmf --innovation bernoulli --p 0.2 --alpha 0.5 --tol 1e-10");
    expect(r.exit_code == 0, "pmf exits 0");
    const auto rows = parse_csv(r.out, "k,probability");
    expect(!rows.empty(), "pmf CSV has header 'k,probability' and rows");
    expect(rows.front().first == 0 && std::abs(rows.front().second - 0.650366) < 1e-6,
           "pmf row 0 is 0.650366");
    double sum = 0.0;
    for (const auto& [k, p] : rows) sum += p;
    expect(sum <= 1.0 + 1e-12 && sum >= 1.0 - 1e-9, "pmf rows sum to within [1 - 10 tol, 1]");
  }

  {  // pmf: JSON format and inline --model agree with shorthand flags
    const RunResult a = run(cli, "pmf --innovation heine --lambda 1 --q 0.5 --alpha 0.5 --format json");
    expect(a.exit_code == 0, "pmf --format json exits 0");
    const RunResult b = run(
        cli,
        R"(pmf --model '{"innovation":{"family":"heine","lambda":1.0,"q":0.5},"alpha":0.5}' --format json)");
    expect(b.exit_code == 0, "pmf --model inline JSON exits 0");
    expect(a.out == b.out, "shorthand flags and --model JSON give identical output");
    const auto j = nlohmann::json::parse(a.out);
    expect(j.contains("probability") && j["method"] == "heine_limit", "pmf JSON payload fields");
  }

  {  // pmf: model file
    const std::string path = "/tmp/inar_cli_check_model.json";
    std::ofstream(path) << R"({"innovation":{"family":"poisson","lambda":1.0},"alpha":0.5})";
    const RunResult r = run(cli, "pmf --model " + path);
    expect(r.exit_code == 0, "pmf --model <file> exits 0");
    expect(parse_csv(r.out, "k,probability").size() > 5, "pmf from file yields a table");
  }

  {  // parameter errors exit 2
    expect(run(cli, "pmf --innovation bernoulli --p 0.2 --alpha 0.5 --tol 1e-5").exit_code == 2,
           "tol coarser than 1e-6 is rejected with exit 2");
    expect(run(cli, "pmf --innovation bernoulli --p 1.5 --alpha 0.5").exit_code == 2,
           "p outside (0,1) is rejected with exit 2");
    expect(run(cli, "pmf --innovation nope --alpha 0.5").exit_code == 2,
           "unknown family is rejected with exit 2");
    expect(run(cli, "pmf --innovation bernoulli --p 0.2").exit_code == 2,
           "missing --alpha is rejected with exit 2");
    expect(run(cli, "pmf --model /tmp/does_not_exist.json").exit_code == 2,
           "missing model file is rejected with exit 2");
    expect(run(cli, "pmf --model '{\"alpha\":0.5}'").exit_code == 2,
           "model JSON without innovation is rejected with exit 2");
    expect(run(cli, "simulate --innovation bernoulli --p 0.2 --alpha 0.5 --steps 10 "
                    "--out /nonexistent-dir/x.csv")
                   .exit_code == 2,
           "unwritable --out path is rejected with exit 2");
    expect(run(cli, "simulate --innovation bernoulli --p 0.2 --alpha 0.5 --steps 0").exit_code == 2,
           "steps < 1 is rejected with exit 2");
    expect(run(cli, "transition --innovation bernoulli --p 0.2 --alpha 0.5 --from 0 --steps 65")
                   .exit_code == 2,
           "k beyond the supported horizon is rejected with exit 2");
    expect(run(cli, "moments --innovation bernoulli --p 0.2 --alpha 0.5 --orders 26").exit_code == 2,
           "orders beyond the Stirling table cap is rejected with exit 2");
  }

  {  // moments: dispersion values per family
    const RunResult r = run(cli, "moments --innovation bernoulli --p 0.2 --alpha 0.5");
    expect(r.exit_code == 0, "moments exits 0");
    const auto j = nlohmann::json::parse(r.out);
    expect(std::abs(j["dispersion_index"].get<double>() - 0.866667) < 1e-6,
           "bernoulli dispersion_index is 0.866667");
    const auto pois = nlohmann::json::parse(
        run(cli, "moments --innovation poisson --lambda 1 --alpha 0.5").out);
    expect(std::abs(pois["dispersion_index"].get<double>() - 1.0) < 1e-10,
           "poisson dispersion_index is 1");
    const auto log7 = nlohmann::json::parse(
        run(cli, "moments --innovation logarithmic --p 0.7 --alpha 0.5").out);
    expect(log7["dispersion_index"].get<double>() > 1.0,
           "logarithmic p=0.7 dispersion_index exceeds 1");
    expect(log7["moments"].size() == 4, "default --orders is 4");
  }

  {  // simulate: header, fixed init, determinism across seeds
    const RunResult r =
        run(cli, "simulate --innovation bernoulli --p 0.2 --alpha 0.5 --steps 50 --seed 7 --init fixed:0");
    expect(r.exit_code == 0, "simulate exits 0");
    const auto rows = parse_csv(r.out, "t,x");
    expect(rows.size() == 50 && rows.front().first == 1, "simulate CSV is t,x with t starting at 1");
    expect(rows.front().second >= 0.0 && rows.front().second <= 1.0,
           "from x0=0 the first value is the innovation draw");
    const RunResult again =
        run(cli, "simulate --innovation bernoulli --p 0.2 --alpha 0.5 --steps 50 --seed 7 --init fixed:0");
    expect(again.out == r.out, "same seed reproduces the path");
  }

  {  // simulate: performance budget (10^6 steps in well under 10 s)
    const auto start = std::chrono::steady_clock::now();
    const RunResult r = run(cli,
                            "simulate --innovation bernoulli --p 0.2 --alpha 0.5 --steps 1000000 "
                            "--seed 3 --out /tmp/inar_cli_check_path.csv");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    expect(r.exit_code == 0, "long simulate exits 0");
    expect(secs < 10.0, "simulate of 10^6 steps stays under 10 s (took " + std::to_string(secs) + ")");
  }

  {  // transition: --from 0 --steps 1 reproduces the innovation pmf
    const RunResult r = run(cli, "transition --innovation heine --lambda 1 --q 0.5 --alpha 0.5 "
                                 "--from 0 --steps 1 --max-k 3");
    expect(r.exit_code == 0, "transition exits 0");
    const auto rows = parse_csv(r.out, "k,probability");
    expect(rows.size() == 4, "transition honors --max-k");
    expect(std::abs(rows[0].second - 0.209712) < 1e-5, "transition row 0 is the Heine f_0");
    expect(std::abs(rows[1].second - 0.419424) < 1e-5, "transition row 1 is the Heine f_1");
  }

  {  // validate: JSON lines, exit 0 on the quick suites
    const RunResult r = run(cli, "validate --suite lemma2");
    expect(r.exit_code == 0, "validate --suite lemma2 exits 0");
    std::istringstream in(r.out);
    std::string line;
    int lines = 0;
    bool ok = true;
    while (std::getline(in, line)) {
      ++lines;
      const auto j = nlohmann::json::parse(line, nullptr, false);
      ok = ok && !j.is_discarded() && j.contains("name") && j.contains("passed") &&
           j.contains("max_abs_error") && j.contains("tolerance");
    }
    expect(lines > 10 && ok, "validate emits one CheckReport JSON object per line");
    expect(run(cli, "validate --suite bogus").exit_code == 2, "unknown suite is rejected with exit 2");
  }

  if (failures == 0) std::printf("cli checks: all passed\n");
  return failures == 0 ? 0 : 1;
}
