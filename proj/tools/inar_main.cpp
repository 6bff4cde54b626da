// Command-line front end: stationary marginal pmf tables, moment reports,
// path simulation, transition kernels and the validation suite.
//
// Exit codes: 0 success, 1 validation failure, 2 usage/parameter error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inar/inar.hpp"

namespace {

struct ModelFlags {
  std::string model_arg;  // file path or inline JSON
  std::string innovation;
  std::optional<double> p, q, c, lambda, alpha;
  std::optional<int> m;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.model_arg,
                  "Model config as inline JSON or a path to a JSON file "
                  "({\"innovation\": {...}, \"alpha\": ...})");
  cmd->add_option("--innovation", flags.innovation,
                  "Innovation family: logarithmic|bernoulli|binomial|poissonian_binomial|heine|poisson");
  cmd->add_option("--p", flags.p, "p parameter (logarithmic, bernoulli, binomial)");
  cmd->add_option("--q", flags.q, "q parameter (poissonian_binomial, heine)");
  cmd->add_option("--c", flags.c, "c parameter (poissonian_binomial)");
  cmd->add_option("--lambda", flags.lambda, "lambda parameter (heine, poisson)");
  cmd->add_option("--m", flags.m, "m parameter (binomial, poissonian_binomial)");
  cmd->add_option("--alpha", flags.alpha, "thinning coefficient in (0,1)");
}

inar::StationaryModel build_model(const ModelFlags& flags) {
  if (!flags.model_arg.empty()) {
    std::string text = flags.model_arg;
    if (text.find('{') == std::string::npos) {
      std::ifstream in(text);
      if (!in) throw std::invalid_argument("cannot open model file: " + text);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("model JSON parse error: ") + e.what());
    }
    return inar::io::model_from_json(j);
  }
  if (flags.innovation.empty())
    throw std::invalid_argument("either --model or --innovation (plus --alpha) is required");
  if (!flags.alpha) throw std::invalid_argument("--alpha is required");
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("missing --") + name);
    return *v;
  };
  auto need_m = [&flags]() {
    if (!flags.m) throw std::invalid_argument("missing --m");
    return *flags.m;
  };
  const std::string& fam = flags.innovation;
  inar::InnovationSpec spec;
  if (fam == "logarithmic") spec = inar::InnovationSpec::logarithmic(need(flags.p, "p"));
  else if (fam == "bernoulli") spec = inar::InnovationSpec::bernoulli(need(flags.p, "p"));
  else if (fam == "binomial") spec = inar::InnovationSpec::binomial(need_m(), need(flags.p, "p"));
  else if (fam == "poissonian_binomial")
    spec = inar::InnovationSpec::poissonian_binomial(need_m(), need(flags.q, "q"), need(flags.c, "c"));
  else if (fam == "heine")
    spec = inar::InnovationSpec::heine(need(flags.lambda, "lambda"), need(flags.q, "q"));
  else if (fam == "poisson") spec = inar::InnovationSpec::poisson(need(flags.lambda, "lambda"));
  else throw std::invalid_argument("unknown innovation family: " + fam);
  inar::StationaryModel model{spec, *flags.alpha};
  model.validate();
  return model;
}

std::string fmt(double x) { return inar::io::format_double(x); }

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
  if (!out) throw std::invalid_argument("failed writing output file: " + out_path);
}

int cmd_pmf(const ModelFlags& flags, double tol, int max_k, const std::string& format,
            const std::string& out_path) {
  const inar::StationaryModel model = build_model(flags);
  const inar::MarginalDistribution marg = inar::marginal_pmf(model, tol);
  const int last = max_k >= 0 ? std::min(max_k, marg.pmf.max_k()) : marg.pmf.max_k();
  std::ostringstream os;
  if (format == "csv") {
    os << "k,probability\n";
    for (int k = 0; k <= last; ++k) os << k << ',' << fmt(marg.pmf.at(k)) << '\n';
  } else {
    nlohmann::json j;
    j["model"] = inar::io::to_json(model);
    j["method"] = inar::marginal_method_name(marg.method);
    j["tol"] = tol;
    j["tail_bound"] = marg.pmf.tail_bound;
    std::vector<double> probs(marg.pmf.probs.begin(), marg.pmf.probs.begin() + last + 1);
    j["probability"] = std::move(probs);
    os << j.dump(2) << '\n';
  }
  write_output(out_path, os.str());
  return 0;
}

int cmd_moments(const ModelFlags& flags, int orders, const std::string& out_path) {
  const inar::StationaryModel model = build_model(flags);
  const inar::MomentReport rep = inar::marginal_moments(model, orders);
  nlohmann::json j = inar::io::to_json(rep);
  j["model"] = inar::io::to_json(model);
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_simulate(const ModelFlags& flags, int steps, std::uint64_t seed, const std::string& init_arg,
                 const std::string& out_path) {
  const inar::StationaryModel model = build_model(flags);
  inar::InitSpec init = inar::InitSpec::stationary();
  if (init_arg != "stationary") {
    if (init_arg.rfind("fixed:", 0) != 0)
      throw std::invalid_argument("--init must be 'stationary' or 'fixed:<n>'");
    init = inar::InitSpec::fixed(std::stoi(init_arg.substr(6)));
  }
  inar::RandomStream rng(seed);
  const inar::SamplePath path = inar::simulate(model, steps, rng, init);
  std::ostringstream os;
  os << "t,x\n";
  for (std::size_t t = 0; t < path.values.size(); ++t) os << (t + 1) << ',' << path.values[t] << '\n';
  write_output(out_path, os.str());
  return 0;
}

int cmd_transition(const ModelFlags& flags, int from, int steps, int max_k, double tol,
                   const std::string& out_path) {
  const inar::StationaryModel model = build_model(flags);
  const inar::DiscretePmf row = inar::k_step_conditional(model, from, steps, tol);
  const int last = max_k >= 0 ? std::min(max_k, row.max_k()) : row.max_k();
  std::ostringstream os;
  os << "k,probability\n";
  for (int k = 0; k <= last; ++k) os << k << ',' << fmt(row.at(k)) << '\n';
  write_output(out_path, os.str());
  return 0;
}

int cmd_validate(const std::string& suite, double tol) {
  const auto reports = inar::validation::run_suite(suite, tol);
  bool all_passed = true;
  for (const auto& rep : reports) {
    std::cout << inar::io::to_json(rep).dump() << '\n';
    all_passed = all_passed && rep.passed;
  }
  std::cout.flush();
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary INAR(1) models under binomial thinning, built backward from the innovation law"};
  app.require_subcommand(1);

  ModelFlags pmf_flags;
  double pmf_tol = 1e-10;
  int pmf_max_k = -1;
  std::string pmf_format = "csv";
  std::string pmf_out;
  auto* pmf_cmd = app.add_subcommand("pmf", "Print the stationary marginal pmf");
  add_model_flags(pmf_cmd, pmf_flags);
  pmf_cmd->add_option("--tol", pmf_tol, "truncation tolerance, in (0, 1e-6]");
  pmf_cmd->add_option("--max-k", pmf_max_k, "largest state to print (default: full support)");
  pmf_cmd->add_option("--format", pmf_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  pmf_cmd->add_option("--out", pmf_out, "output file (default: stdout)");

  ModelFlags mom_flags;
  int mom_orders = 4;
  std::string mom_out;
  auto* mom_cmd = app.add_subcommand("moments", "Print mean/variance/dispersion and the four moment vectors");
  add_model_flags(mom_cmd, mom_flags);
  mom_cmd->add_option("--orders", mom_orders, "highest order R (default 4)");
  mom_cmd->add_option("--out", mom_out, "output file (default: stdout)");

  ModelFlags sim_flags;
  int sim_steps = 0;
  std::uint64_t sim_seed = 1;
  std::string sim_init = "stationary";
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a sample path");
  add_model_flags(sim_cmd, sim_flags);
  sim_cmd->add_option("--steps", sim_steps, "path length T")->required();
  sim_cmd->add_option("--seed", sim_seed, "random seed (default 1)");
  sim_cmd->add_option("--init", sim_init, "stationary or fixed:<n> (default stationary)");
  sim_cmd->add_option("--out", sim_out, "output file (default: stdout)");

  ModelFlags tr_flags;
  int tr_from = 0;
  int tr_steps = 1;
  int tr_max_k = -1;
  double tr_tol = 1e-10;
  std::string tr_out;
  auto* tr_cmd = app.add_subcommand("transition", "Print a row of the k-step conditional distribution");
  add_model_flags(tr_cmd, tr_flags);
  tr_cmd->add_option("--from", tr_from, "conditioning state l")->required();
  tr_cmd->add_option("--steps", tr_steps, "number of steps k (default 1)");
  tr_cmd->add_option("--max-k", tr_max_k, "largest destination state to print");
  tr_cmd->add_option("--tol", tr_tol, "truncation tolerance, in (0, 1e-6]");
  tr_cmd->add_option("--out", tr_out, "output file (default: stdout)");

  std::string val_suite = "all";
  double val_tol = 1e-8;
  auto* val_cmd = app.add_subcommand("validate", "Run the validation suite (JSON-lines reports)");
  val_cmd->add_option("--suite", val_suite, "all|functional-eq|oracles|lemma2|monte-carlo")
      ->check(CLI::IsMember({"all", "functional-eq", "oracles", "lemma2", "monte-carlo"}));
  val_cmd->add_option("--tol", val_tol, "tolerance for the analytic checks (default 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (pmf_cmd->parsed()) return cmd_pmf(pmf_flags, pmf_tol, pmf_max_k, pmf_format, pmf_out);
    if (mom_cmd->parsed()) return cmd_moments(mom_flags, mom_orders, mom_out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_flags, sim_steps, sim_seed, sim_init, sim_out);
    if (tr_cmd->parsed()) return cmd_transition(tr_flags, tr_from, tr_steps, tr_max_k, tr_tol, tr_out);
    if (val_cmd->parsed()) return cmd_validate(val_suite, val_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
