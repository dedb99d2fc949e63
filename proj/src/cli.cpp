#include "rtm/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtm/bench.hpp"
#include "rtm/dataset.hpp"
#include "rtm/model_io.hpp"
#include "rtm/spl.hpp"
#include "rtm/train.hpp"

namespace rtm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Invalid input reported with exit code 1 rather than 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string default_out_root() {
  if (const char* env = std::getenv("RTM_OUT_DIR"); env && *env) return env;
  return "runs";
}

std::string sibling_test_path(const std::string& train_path) {
  fs::path p(train_path);
  fs::path stem = p.stem();
  stem += "_test";
  stem += p.extension();
  return (p.parent_path() / stem).string();
}

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

DatasetSpec dataset_spec_from_json(const json& j) {
  DatasetSpec spec;
  spec.n_bits = j.value("bits", spec.n_bits);
  spec.noisy = j.value("noisy", spec.noisy);
  spec.n_train = j.value("n_train", spec.n_train);
  spec.n_test = j.value("n_test", spec.n_test);
  spec.noise_sigma = j.value("noise_sigma", spec.noisy ? kDefaultNoiseSigma : 0.0);
  spec.seed = j.value("seed", spec.seed);
  return spec;
}

DataSource data_source_from_json(const json& j) {
  DataSource src;
  if (j.contains("train_csv")) {
    src.train_csv = j.at("train_csv").get<std::string>();
    src.test_csv = j.value("test_csv", sibling_test_path(src.train_csv));
  } else {
    src.spec = dataset_spec_from_json(j);
  }
  return src;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  DatasetSpec spec;
  std::string out;
  std::string test_out;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  opt.spec.validate();
  Rng rng(opt.spec.seed);
  const auto [train, test] = generate(opt.spec, rng);
  const std::string test_path =
      opt.test_out.empty() ? sibling_test_path(opt.out) : opt.test_out;
  write_csv(train, opt.out);
  write_csv(test, test_path);
  out << "wrote " << train.size() << " training samples to " << opt.out << '\n';
  out << "wrote " << test.size() << " test samples to " << test_path << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// train

void apply_experiment_json(const json& j, ExperimentConfig& cfg) {
  if (j.contains("dataset")) {
    if (j.at("dataset").is_object()) {
      cfg.data = data_source_from_json(j.at("dataset"));
    } else {
      cfg.data.spec.reset();
      cfg.data.train_csv = j.at("dataset").get<std::string>();
      cfg.data.test_csv = sibling_test_path(cfg.data.train_csv);
    }
  }
  if (j.contains("test_dataset")) {
    cfg.data.test_csv = j.at("test_dataset").get<std::string>();
  }
  if (j.contains("variant")) {
    cfg.variant = variant_from_name(j.at("variant").get<std::string>());
  }
  cfg.n_clauses = j.value("m", cfg.n_clauses);
  cfg.resolution = j.value("T", cfg.resolution);
  cfg.specificity = j.value("s", cfg.specificity);
  cfg.n_states = j.value("N", cfg.n_states);
  cfg.alpha = j.value("alpha", cfg.alpha);
  cfg.epochs = j.value("epochs", cfg.epochs);
  if (j.contains("seeds")) {
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  }
  cfg.out_dir = j.value("out", cfg.out_dir);
  cfg.hist_bin_width = j.value("hist_bin_width", cfg.hist_bin_width);
  cfg.random_state_init = j.value("random_init", cfg.random_state_init);
  cfg.empty_clause_zero_at_inference =
      j.value("empty_clause_zero_at_inference", cfg.empty_clause_zero_at_inference);
  cfg.decrement_requires_fire =
      j.value("decrement_requires_fire", cfg.decrement_requires_fire);
  cfg.additive_real_update =
      j.value("additive_real_update", cfg.additive_real_update);
}

int cmd_train(const ExperimentConfig& cfg_in, std::ostream& out) {
  ExperimentConfig cfg = cfg_in;
  if (!cfg.data.spec && cfg.data.train_csv.empty()) {
    throw UsageError("train: no dataset given (use --dataset or --config)");
  }
  if (!cfg.data.spec && cfg.data.test_csv.empty()) {
    cfg.data.test_csv = sibling_test_path(cfg.data.train_csv);
  }
  if (cfg.out_dir.empty()) {
    std::ostringstream name;
    name << variant_name(cfg.variant) << "_m" << cfg.n_clauses << "_T"
         << cfg.effective_resolution() << "_seed" << cfg.seeds.front();
    cfg.out_dir = (fs::path(default_out_root()) / name.str()).string();
  }

  const ExperimentResult result = run_experiment(cfg);
  for (const SeedRun& run : result.runs) {
    out << "seed " << run.seed << ": train MAE " << fmt(run.report.train_mae.back())
        << ", test MAE " << fmt(run.report.test_mae.back()) << " ("
        << fmt(run.report.wall_seconds) << "s)\n";
  }
  if (result.runs.size() > 1) {
    out << "best: train MAE " << fmt(result.min_train_mae) << ", test MAE "
        << fmt(result.min_test_mae) << "; mean: train MAE "
        << fmt(result.mean_train_mae) << ", test MAE "
        << fmt(result.mean_test_mae) << '\n';
  }
  out << "artifacts in " << cfg.out_dir << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& model_path, const std::string& dataset_path,
             std::ostream& out) {
  const RtmModel model = load_model(model_path);
  const Dataset ds = read_csv(dataset_path);
  if (ds.n_bits != model.n_inputs()) {
    throw UsageError("eval: model expects " + std::to_string(model.n_inputs()) +
                     " features but dataset has " + std::to_string(ds.n_bits));
  }
  out << "MAE " << fmt(evaluate_mae(model, ds)) << " over " << ds.size()
      << " samples\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOverrides {
  std::string out;
  int epochs = -1;
  std::vector<std::uint64_t> seeds;
};

int cmd_sweep(const std::string& grid_path, const SweepOverrides& over,
              std::ostream& out) {
  const json grid = load_json(grid_path);
  if (!grid.contains("dataset")) {
    throw UsageError("sweep: grid file has no \"dataset\" entry");
  }

  ExperimentConfig base;
  base.data = data_source_from_json(grid.at("dataset"));
  base.specificity = 2.0;
  base.n_states = grid.value("N", base.n_states);
  base.alpha = grid.value("alpha", base.alpha);
  base.epochs = grid.value("epochs", base.epochs);
  if (grid.contains("seeds")) {
    base.seeds = grid.at("seeds").get<std::vector<std::uint64_t>>();
  }
  base.hist_bin_width = grid.value("hist_bin_width", base.hist_bin_width);
  base.random_state_init = grid.value("random_init", base.random_state_init);
  base.decrement_requires_fire =
      grid.value("decrement_requires_fire", base.decrement_requires_fire);
  base.additive_real_update =
      grid.value("additive_real_update", base.additive_real_update);

  std::string out_root = grid.value("out", "");
  if (!over.out.empty()) out_root = over.out;
  if (out_root.empty()) {
    out_root = (fs::path(default_out_root()) / "sweep").string();
  }
  if (over.epochs >= 0) base.epochs = over.epochs;
  if (!over.seeds.empty()) base.seeds = over.seeds;

  std::vector<std::string> variant_names = {"rtm-iw"};
  if (grid.contains("variants")) {
    variant_names = grid.at("variants").get<std::vector<std::string>>();
  }
  std::vector<int> ms = grid.value("m", std::vector<int>{base.n_clauses});
  std::vector<std::int64_t> ts =
      grid.value("T", std::vector<std::int64_t>{0});
  std::vector<double> ss = grid.value("s", std::vector<double>{base.specificity});

  std::ofstream summary;
  fs::create_directories(out_root);
  summary.open(fs::path(out_root) / "sweep_summary.csv", std::ios::binary);
  if (!summary) throw std::runtime_error("sweep: cannot write sweep_summary.csv");
  summary << "cell,variant,m,T,s,mean_train_mae,mean_test_mae,min_train_mae,min_test_mae\n";

  char buf[64];
  auto csv_fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  for (const std::string& vname : variant_names) {
    for (int m : ms) {
      for (std::int64_t t : ts) {
        for (double s : ss) {
          ExperimentConfig cfg = base;
          cfg.variant = variant_from_name(vname);
          cfg.n_clauses = m;
          cfg.resolution = t;
          cfg.specificity = s;
          std::ostringstream cell;
          cell << vname << "_m" << m << "_T" << cfg.effective_resolution()
               << "_s" << fmt(s);
          cfg.out_dir = (fs::path(out_root) / cell.str()).string();
          const ExperimentResult r = run_experiment(cfg);
          summary << cell.str() << ',' << vname << ',' << m << ','
                  << cfg.effective_resolution() << ',' << csv_fmt(s) << ','
                  << csv_fmt(r.mean_train_mae) << ',' << csv_fmt(r.mean_test_mae)
                  << ',' << csv_fmt(r.min_train_mae) << ','
                  << csv_fmt(r.min_test_mae) << '\n';
          out << cell.str() << ": mean test MAE " << fmt(r.mean_test_mae)
              << ", min test MAE " << fmt(r.min_test_mae) << '\n';
        }
      }
    }
  }
  out << "sweep artifacts in " << out_root << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// spl-demo

struct SplDemoOptions {
  SplEnvironment env;
  SplState init{0.5, 100};
  int steps = 10000;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_spl_demo(const SplDemoOptions& opt, std::ostream& out) {
  Rng rng(opt.seed);
  const std::vector<double> traj = spl_run(opt.env, opt.init, opt.steps, rng);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("spl-demo: cannot open " + opt.out_path);
    sink = &file;
  }
  *sink << "step,lambda\n";
  char buf[64];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", traj[i]);
    *sink << i << ',' << buf << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::string& model_path, std::ostream& out) {
  const RtmModel model = load_model(model_path);
  out << clause_report(model);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Regression Tsetlin machine toolkit: synthetic data generation, "
               "training, evaluation and parameter sweeps"};
  app.name("rtm");
  app.require_subcommand(1);

  // generate
  GenerateOptions gen;
  gen.spec.seed = 1;
  auto* generate_cmd =
      app.add_subcommand("generate", "Generate a synthetic dataset pair (train/test CSV)");
  generate_cmd->add_option("--bits", gen.spec.n_bits, "Input width o")
      ->required()
      ->check(CLI::Range(1, 24));
  auto* noisy_flag = generate_cmd->add_flag("--noisy", gen.spec.noisy,
                                            "Perturb training targets with Gaussian noise");
  auto* sigma_opt = generate_cmd->add_option("--noise-sigma", gen.spec.noise_sigma,
                                             "Noise stddev in target units")
                        ->needs(noisy_flag)
                        ->capture_default_str();
  generate_cmd->add_option("--n-train", gen.spec.n_train, "Training samples")
      ->capture_default_str();
  generate_cmd->add_option("--n-test", gen.spec.n_test, "Test samples")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.spec.seed, "Generator seed")
      ->capture_default_str();
  generate_cmd->add_option("--out", gen.out, "Training CSV path")->required();
  generate_cmd->add_option("--test-out", gen.test_out,
                           "Test CSV path (default: <out>_test.csv)");

  // train
  ExperimentConfig train_cfg;
  std::string train_config_path;
  std::string train_dataset, train_test_dataset, train_variant = "rtm-iw";
  auto* train_cmd = app.add_subcommand("train", "Train a model on a CSV dataset");
  train_cmd->add_option("--config", train_config_path,
                        "JSON config; command-line flags override its values");
  auto* opt_dataset = train_cmd->add_option("--dataset", train_dataset, "Training CSV");
  auto* opt_testds = train_cmd->add_option("--test-dataset", train_test_dataset,
                                           "Test CSV (default: sibling <dataset>_test.csv)");
  auto* opt_variant = train_cmd->add_option("--variant", train_variant,
                                            "Model variant: rtm | rtm-iw | rtm-rw")
                          ->capture_default_str();
  auto* opt_m = train_cmd->add_option("--m", train_cfg.n_clauses, "Number of clauses")
                    ->capture_default_str();
  auto* opt_t = train_cmd->add_option("--T", train_cfg.resolution,
                                      "Resolution (0: m for rtm, 100*m otherwise)")
                    ->capture_default_str();
  auto* opt_s = train_cmd->add_option("--s", train_cfg.specificity, "Specificity")
                    ->capture_default_str();
  auto* opt_n = train_cmd->add_option("--N", train_cfg.n_states,
                                      "Automaton states per action")
                    ->capture_default_str();
  auto* opt_alpha = train_cmd->add_option("--alpha", train_cfg.alpha,
                                          "Real-weight learning rate")
                        ->capture_default_str();
  auto* opt_epochs = train_cmd->add_option("--epochs", train_cfg.epochs, "Training epochs")
                         ->capture_default_str();
  std::vector<std::uint64_t> train_seeds;
  auto* opt_seeds = train_cmd->add_option("--seed", train_seeds,
                                          "Seed (repeat for best-of-seeds runs)");
  std::string train_out;
  auto* opt_out = train_cmd->add_option("--out", train_out,
                                        "Output directory (default: $RTM_OUT_DIR or runs/<name>)");
  auto* opt_hist = train_cmd->add_option("--hist-bin", train_cfg.hist_bin_width,
                                         "Weight histogram bin width")
                       ->capture_default_str();
  auto* opt_rand = train_cmd->add_flag("--random-init", train_cfg.random_state_init,
                                       "Start automata at N or N+1 uniformly");
  auto* opt_decfire = train_cmd->add_flag("--decrement-requires-fire",
                                          train_cfg.decrement_requires_fire,
                                          "Weight decrement also requires the clause to fire");
  auto* opt_addrw = train_cmd->add_flag("--additive-rw", train_cfg.additive_real_update,
                                        "Additive real-weight updates instead of multiplicative");
  auto* opt_emptyzero = train_cmd->add_flag("--empty-zero-inference",
                                            train_cfg.empty_clause_zero_at_inference,
                                            "Empty clauses output 0 at inference");
  auto* opt_seq = train_cmd->add_flag("--sequential", "Run seeds sequentially");

  // eval
  std::string eval_model, eval_dataset;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a saved model on a CSV dataset");
  eval_cmd->add_option("--model", eval_model, "model.json path")->required();
  eval_cmd->add_option("--dataset", eval_dataset, "CSV dataset")->required();

  // sweep
  std::string sweep_grid;
  SweepOverrides sweep_over;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of experiments from a JSON file");
  sweep_cmd->add_option("--grid", sweep_grid, "Grid JSON path")->required();
  sweep_cmd->add_option("--out", sweep_over.out, "Output root (overrides grid)");
  sweep_cmd->add_option("--epochs", sweep_over.epochs, "Override epochs");
  sweep_cmd->add_option("--seed", sweep_over.seeds, "Override seed list");

  // spl-demo
  SplDemoOptions spl;
  auto* spl_cmd = app.add_subcommand("spl-demo",
                                     "Random walk on the discretized unit interval with a "
                                     "noisy directional oracle; emits the trajectory as CSV");
  spl_cmd->add_option("--p", spl.env.p, "Oracle correctness probability (> 0.5)")
      ->capture_default_str();
  spl_cmd->add_option("--lambda-star", spl.env.lambda_star, "Target point")
      ->capture_default_str();
  spl_cmd->add_option("--N", spl.init.n_steps, "Grid resolution")->capture_default_str();
  spl_cmd->add_option("--steps", spl.steps, "Number of steps")->capture_default_str();
  spl_cmd->add_option("--init", spl.init.lambda, "Initial position")->capture_default_str();
  spl_cmd->add_option("--seed", spl.seed, "Seed")->capture_default_str();
  spl_cmd->add_option("--out", spl.out_path, "Trajectory CSV path (default: stdout)");

  // report
  std::string report_model;
  auto* report_cmd = app.add_subcommand("report",
                                        "Print each positively weighted clause and its weight");
  report_cmd->add_option("--model", report_model, "model.json path")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rtm");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate_cmd->parsed()) {
      if (gen.spec.noisy && sigma_opt->count() == 0) {
        gen.spec.noise_sigma = kDefaultNoiseSigma;
      }
      return cmd_generate(gen, out);
    }
    if (train_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!train_config_path.empty()) {
        apply_experiment_json(load_json(train_config_path), cfg);
      }
      if (opt_dataset->count()) {
        cfg.data.spec.reset();
        cfg.data.train_csv = train_dataset;
        cfg.data.test_csv.clear();
      }
      if (opt_testds->count()) cfg.data.test_csv = train_test_dataset;
      if (opt_variant->count() || train_config_path.empty()) {
        cfg.variant = variant_from_name(train_variant);
      }
      if (opt_m->count()) cfg.n_clauses = train_cfg.n_clauses;
      if (opt_t->count()) cfg.resolution = train_cfg.resolution;
      if (opt_s->count()) cfg.specificity = train_cfg.specificity;
      if (opt_n->count()) cfg.n_states = train_cfg.n_states;
      if (opt_alpha->count()) cfg.alpha = train_cfg.alpha;
      if (opt_epochs->count()) cfg.epochs = train_cfg.epochs;
      if (opt_seeds->count()) cfg.seeds = train_seeds;
      if (opt_out->count()) cfg.out_dir = train_out;
      if (opt_hist->count()) cfg.hist_bin_width = train_cfg.hist_bin_width;
      if (opt_rand->count()) cfg.random_state_init = true;
      if (opt_decfire->count()) cfg.decrement_requires_fire = true;
      if (opt_addrw->count()) cfg.additive_real_update = true;
      if (opt_emptyzero->count()) cfg.empty_clause_zero_at_inference = true;
      if (opt_seq->count()) cfg.parallel_seeds = false;
      return cmd_train(cfg, out);
    }
    if (eval_cmd->parsed()) return cmd_eval(eval_model, eval_dataset, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_grid, sweep_over, out);
    if (spl_cmd->parsed()) return cmd_spl_demo(spl, out);
    if (report_cmd->parsed()) return cmd_report(report_model, out);
  } catch (const UsageError& e) {
    err << "rtm: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "rtm: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace rtm
