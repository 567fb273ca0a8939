#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ljfrft/bench.hpp"
#include "ljfrft/error.hpp"
#include "ljfrft/io.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/selftest.hpp"
#include "ljfrft/synthetic.hpp"
#include "params.hpp"

namespace ljfrft::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SynthParams {
  Eigen::Index n = 6;
  Eigen::Index t = 6;
  Eigen::Index m = 6;
  Eigen::Index k_band = 4;
  Eigen::Index l_band = 4;
  Eigen::Index overlap = 0;
  double sigma = 0.2;
  double true_alpha = 0.55;
  double true_beta = 0.45;
  int knn = 2;
  std::string shift = "adjacency";
  std::uint64_t seed = 1;

  void bind(ParamSet& ps) {
    ps.add("n", &n, "vertices");
    ps.add("t", &t, "block length (time samples per block)");
    ps.add("m", &m, "number of blocks");
    ps.add("k_band", &k_band, "signal band: vertex frequencies");
    ps.add("l_band", &l_band, "signal band: time frequencies");
    ps.add("overlap", &overlap, "rows/columns shared by signal and noise bands");
    ps.add("sigma", &sigma, "noise standard deviation");
    ps.add("true_alpha", &true_alpha, "graph order of the generating domain");
    ps.add("true_beta", &true_beta, "time order of the generating domain");
    ps.add("knn", &knn, "neighbours per vertex in the random k-NN graph");
    ps.add("shift", &shift, "graph shift operator");
    ps.add("seed", &seed, "seed for the graph, signal, noise and training");
  }

  synthetic::SyntheticSpec spec() const {
    synthetic::SyntheticSpec s;
    s.n = n;
    s.t = t;
    s.m = m;
    s.band = {k_band, l_band};
    s.overlap = overlap;
    s.sigma = sigma;
    s.true_orders = {true_alpha, true_beta};
    s.knn = knn;
    s.shift = graphs::parse_shift_kind(shift);
    s.seed = seed;
    return s;
  }
};

struct FileParams {
  std::string clean;
  std::string noisy;
  std::string coords;
  std::string edges;
  bool directed = false;
  std::string sidecar;
  Eigen::Index block_len = 0;
  Eigen::Index k_band = 0;
  Eigen::Index l_band = 0;
  int knn = 2;
  std::string shift = "adjacency";
  bool zscore = false;
  double sigma = 0.2;
  std::uint64_t seed = 1;

  void bind(ParamSet& ps) {
    ps.add("clean", &clean, "clean signal CSV (N rows, M*T columns)");
    ps.add("noisy", &noisy, "noisy signal CSV; white noise of --sigma is added when empty");
    ps.add("coords", &coords, "vertex coordinates CSV for a k-NN graph");
    ps.add("edges", &edges, "edge list CSV (src,dst,weight) instead of coordinates");
    ps.add_flag("directed", &directed, "treat the edge list as directed");
    ps.add("sidecar", &sidecar, "generator sidecar JSON supplying T, K, L, k and the shift");
    ps.add("block_len", &block_len, "block length T (0: sidecar, else one block)");
    ps.add("k_band", &k_band, "fixed-filter vertex band (0: sidecar)");
    ps.add("l_band", &l_band, "fixed-filter time band (0: sidecar)");
    ps.add("knn", &knn, "neighbours per vertex for --coords");
    ps.add("shift", &shift, "graph shift operator");
    ps.add_flag("zscore", &zscore, "z-score each vertex of both inputs independently");
    ps.add("sigma", &sigma, "white-noise level when --noisy is empty");
    ps.add("seed", &seed, "seed for added noise and training");
  }
};

struct TrainParams {
  std::string filter = "fixed";
  int epochs = 10000;
  double lr = 5e-3;
  double alpha0 = 0.1;
  double beta0 = 0.1;
  int restarts = 1;
  double init_lo = -2.0;
  double init_hi = 2.0;
  double lr_decay_factor = 1.0;
  int lr_decay_period = 0;
  double grid_lo = -2.0;
  double grid_hi = 2.0;
  double grid_step = 0.01;
  int threads = 0;

  void bind(ParamSet& ps) {
    ps.add("filter", &filter, "fixed | learnable | wiener (wiener: grid search)");
    ps.add("epochs", &epochs, "training epochs");
    ps.add("lr", &lr, "Adam learning rate");
    ps.add("alpha0", &alpha0, "initial graph order");
    ps.add("beta0", &beta0, "initial time order");
    ps.add("restarts", &restarts, "independent runs from random orders in [init-lo, init-hi]");
    ps.add("init_lo", &init_lo, "random init lower bound");
    ps.add("init_hi", &init_hi, "random init upper bound");
    ps.add("lr_decay_factor", &lr_decay_factor, "step decay factor");
    ps.add("lr_decay_period", &lr_decay_period, "step decay period in epochs (0: off)");
    ps.add("grid_lo", &grid_lo, "wiener grid lower bound (both orders)");
    ps.add("grid_hi", &grid_hi, "wiener grid upper bound (both orders)");
    ps.add("grid_step", &grid_step, "wiener grid step");
    ps.add("threads", &threads, "worker threads (0: LJFRFT_THREADS or all cores)");
  }

  TrainConfig config(std::uint64_t seed) const {
    TrainConfig c = TrainConfig::denoise_defaults();
    c.epochs = epochs;
    c.learning_rate = lr;
    c.init_orders = {alpha0, beta0};
    c.restarts = restarts;
    c.order_init_range = {init_lo, init_hi};
    c.seed = seed;
    if (lr_decay_period > 0) c.lr_decay = LrDecay{lr_decay_factor, lr_decay_period};
    c.threads = threads > 0 ? threads : bench::default_threads();
    return c;
  }
};

/// One denoising problem, however it was obtained.
struct DenoiseInput {
  TimeVertexSignal clean;
  TimeVertexSignal noisy;
  FracOpPtr graph_op;
  FracOpPtr time_op;
  BandSpec band{0, 0};
};

struct Outputs {
  std::string dir;
  std::map<std::string, std::string> files;

  void write() const {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::ConfigError, "cannot create '" + dir + "': " + ec.message());
    for (const auto& [name, text] : files) io::write_text_file((fs::path(dir) / name).string(), text);
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_coords(const std::string& path, const std::vector<std::vector<double>>& coords) {
  std::string text;
  for (const auto& p : coords) {
    for (std::size_t i = 0; i < p.size(); ++i) text += (i ? "," : "") + shortest(p[i]);
    text += '\n';
  }
  io::write_text_file(path, text);
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  const std::string text = io::read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, "config '" + path + "': " + e.what());
  }
}

FracOpPtr time_operator(Eigen::Index t) {
  return std::make_shared<const FractionalOperator>(fracops::make_time_fracop(t));
}

DenoiseInput load_file_input(const FileParams& fp, const ParamSet& ps) {
  if (fp.clean.empty()) throw Error(ErrorCode::ConfigError, "--clean is required");
  if (fp.coords.empty() == fp.edges.empty()) {
    throw Error(ErrorCode::ConfigError, "give exactly one of --coords and --edges");
  }
  Eigen::Index block_len = fp.block_len;
  BandSpec band{fp.k_band, fp.l_band};
  int knn = fp.knn;
  graphs::ShiftKind shift = graphs::parse_shift_kind(fp.shift);
  if (!fp.sidecar.empty()) {
    const auto spec = io::parse_sidecar_json(io::read_text_file(fp.sidecar));
    if (block_len == 0) block_len = spec.t;
    if (band.k_band == 0) band.k_band = spec.band.k_band;
    if (band.l_band == 0) band.l_band = spec.band.l_band;
    if (!ps.given("knn")) knn = spec.knn;
    if (!ps.given("shift")) shift = spec.shift;
  }

  signals::CsvLoadOptions opts;
  opts.block_len = block_len;
  opts.zscore = fp.zscore;
  DenoiseInput in;
  in.clean = signals::load_timeseries_csv(fp.clean, opts);
  opts.n_expected = in.clean.n();
  opts.cols_expected = in.clean.data().cols();
  in.noisy = fp.noisy.empty() ? signals::add_white_noise(in.clean, fp.sigma, fp.seed)
                              : signals::load_timeseries_csv(fp.noisy, opts);

  const graphs::Graph g = fp.edges.empty()
                              ? graphs::knn_graph(graphs::load_coords_csv(fp.coords), knn, true)
                              : graphs::load_edge_list_csv(fp.edges, in.clean.n(), fp.directed);
  if (g.n != in.clean.n()) {
    throw Error(ErrorCode::ShapeMismatch, "graph has " + std::to_string(g.n) +
                                              " vertices but the signal has " +
                                              std::to_string(in.clean.n()));
  }
  in.graph_op = synthetic::graph_operator(g, shift);
  in.time_op = time_operator(in.clean.t());
  in.band = band;
  return in;
}

DenoiseInput synth_input(const synthetic::SyntheticProblem& p) {
  return {p.clean, p.noisy, p.graph_op, p.time_op, p.spec.band};
}

DiagonalFilter band_filter(const DenoiseInput& in) {
  if (in.band.k_band < 1 || in.band.l_band < 1) {
    throw Error(ErrorCode::ConfigError, "fixed filter needs --k-band and --l-band (or a sidecar)");
  }
  return filtering::fixed_lowpass(in.graph_op->n, in.time_op->n, in.band.k_band, in.band.l_band);
}

std::string orders_str(const OrderPair& p) { return "(" + fmt(p.first) + ", " + fmt(p.second) + ")"; }

void run_denoise(const DenoiseInput& in, const TrainParams& tp, std::uint64_t seed,
                 const json& resolved, Outputs& outs, std::ostream& out) {
  const FilterMode mode = parse_filter_mode(tp.filter);
  out << "input SNR " << fmt(filtering::snr_db(in.clean, in.noisy), 2) << " dB, N=" << in.clean.n()
      << " T=" << in.clean.t() << " M=" << in.clean.m() << "\n";
  if (mode == FilterMode::Wiener) {
    const GridSpec grid{{tp.grid_lo, tp.grid_hi, tp.grid_step}, {tp.grid_lo, tp.grid_hi, tp.grid_step}};
    const int threads = tp.threads > 0 ? tp.threads : bench::default_threads();
    const auto rep = bench::grid_search(in.clean, in.noisy, in.graph_op, in.time_op, grid,
                                        FilterMode::Wiener, std::nullopt, threads);
    outs.files["report.json"] = io::bench_reports_json({rep}, resolved.dump());
    outs.files["cells.csv"] = io::cells_csv({rep});
    out << "wiener grid: best orders " << orders_str({rep.best_cell().alpha, rep.best_cell().beta})
        << ", SNR " << fmt(rep.snr, 2) << " dB over " << rep.cells.size() << " cells in "
        << fmt(rep.total_time, 2) << " s\n";
    return;
  }
  std::optional<DiagonalFilter> fixed;
  if (mode == FilterMode::Fixed) fixed = band_filter(in);
  const auto rep = learn::train_denoiser(in.clean, in.noisy, in.graph_op, in.time_op, mode,
                                         tp.config(seed), fixed);
  outs.files["report.json"] = io::train_report_json(rep, resolved.dump());
  outs.files["loss.csv"] = io::loss_csv(rep.loss_curve);
  out << to_string(mode) << " filter: learned orders " << orders_str(rep.learned_orders)
      << ", SNR " << fmt(rep.snr_out, 2) << " dB, final loss " << rep.final_loss << ", "
      << rep.epochs_run << " epochs in " << fmt(rep.wall_time, 2) << " s\n";
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> parse_sizes(const std::string& text) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      const long n = std::stol(item.substr(0, x));
      const long t = std::stol(item.substr(x + 1));
      sizes.emplace_back(n, t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "size '" + item + "' is not of the form NxT");
    }
  }
  if (sizes.empty()) throw Error(ErrorCode::ConfigError, "no sizes given");
  return sizes;
}

std::vector<BenchMethod> parse_methods(const std::string& text) {
  std::vector<BenchMethod> methods;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) methods.push_back(parse_bench_method(item));
  if (methods.empty()) throw Error(ErrorCode::ConfigError, "no methods given");
  return methods;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learnable joint time-vertex fractional Fourier transform"};
  app.name("ljfrft");
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    std::unique_ptr<ParamSet> params;
    std::string config_path;
    std::string out_dir = "ljfrft-out";
  };
  std::map<std::string, Command> commands;
  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    c.params = std::make_unique<ParamSet>(c.app);
    c.app->add_option("--config", c.config_path, "JSON config file (flags override it)");
    c.params->add("out", &c.out_dir, "output directory for report.json and CSVs (empty: none)");
    return c;
  };

  // transform-learn
  struct {
    double alpha = 0.45, beta = 0.55;
    Eigen::Index n = 20, t = 6;
    int layers = 1, epochs = 1200;
    double lr = 1e-3;
    std::uint64_t seed = 7;
  } tl;
  {
    auto& ps = *add("transform-learn", "learn the order pair of a known joint transform").params;
    ps.add("alpha", &tl.alpha, "true graph order");
    ps.add("beta", &tl.beta, "true time order");
    ps.add("n", &tl.n, "vertices of the random directed graph");
    ps.add("t", &tl.t, "time samples");
    ps.add("layers", &tl.layers, "stacked transform layers");
    ps.add("epochs", &tl.epochs, "training epochs");
    ps.add("lr", &tl.lr, "Adam learning rate");
    ps.add("seed", &tl.seed, "seed for the graph and input");
  }

  SynthParams ds_synth;
  TrainParams ds_train;
  std::string save_data;
  {
    auto& ps = *add("denoise-synth", "denoise a synthetic bandlimited signal").params;
    ds_synth.bind(ps);
    ds_train.bind(ps);
    ps.add("save_data", &save_data, "also write clean.csv, noisy.csv, coords.csv, sidecar.json here");
  }

  FileParams df_file;
  TrainParams df_train;
  df_train.filter = "learnable";
  df_train.restarts = 20;
  {
    auto& ps = *add("denoise-file", "denoise a time-vertex signal loaded from CSV").params;
    df_file.bind(ps);
    df_train.bind(ps);
  }

  SynthParams gs_synth;
  FileParams gs_file;
  struct {
    std::string policy = "wiener";
    double alpha_lo = -2, alpha_hi = 2, alpha_step = 0.01;
    double beta_lo = -2, beta_hi = 2, beta_step = 0.01;
    int threads = 0;
  } gs;
  {
    auto& ps = *add("grid-search", "exhaustive (alpha, beta) search; file input when --clean is set").params;
    // Keys shared with the synthetic source (knn, shift, sigma, seed, bands)
    // also apply to file input.
    gs_synth.bind(ps);
    ps.add("clean", &gs_file.clean, "clean signal CSV (switches to file input)");
    ps.add("noisy", &gs_file.noisy, "noisy signal CSV");
    ps.add("coords", &gs_file.coords, "vertex coordinates CSV");
    ps.add("edges", &gs_file.edges, "edge list CSV");
    ps.add_flag("directed", &gs_file.directed, "treat the edge list as directed");
    ps.add("sidecar", &gs_file.sidecar, "generator sidecar JSON");
    ps.add("block_len", &gs_file.block_len, "block length T for file input (0: sidecar)");
    ps.add("policy", &gs.policy, "wiener | fixed");
    ps.add("alpha_lo", &gs.alpha_lo, "alpha grid lower bound");
    ps.add("alpha_hi", &gs.alpha_hi, "alpha grid upper bound");
    ps.add("alpha_step", &gs.alpha_step, "alpha grid step");
    ps.add("beta_lo", &gs.beta_lo, "beta grid lower bound");
    ps.add("beta_hi", &gs.beta_hi, "beta grid upper bound");
    ps.add("beta_step", &gs.beta_step, "beta grid step");
    ps.add("threads", &gs.threads, "worker threads (0: LJFRFT_THREADS or all cores)");
  }

  std::string br_sizes = "10x10,15x15,20x20";
  std::string br_methods = "JFRFT-search,JFRFT-learn,GFRFT-search,GFRFT-learn";
  bench::RuntimeBenchConfig br;
  {
    auto& ps = *add("bench-runtime", "wall-clock comparison of search and learn").params;
    ps.add("sizes", &br_sizes, "comma-separated NxT sizes");
    ps.add("methods", &br_methods, "comma-separated methods");
    ps.add("epochs", &br.epochs, "epochs for learn methods");
    ps.add("grid_step", &br.grid_step, "grid step for search methods");
    ps.add("grid_lo", &br.grid_lo, "grid lower bound");
    ps.add("grid_hi", &br.grid_hi, "grid upper bound");
    ps.add("repeats", &br.repeats, "runs per timing (median reported)");
    ps.add("sigma", &br.sigma, "noise level");
    ps.add("seed", &br.seed, "problem seed");
  }

  std::uint64_t st_seed = 1;
  add("selftest", "run the invariant suites").params->add("seed", &st_seed, "suite seed");

  // CLI11 consumes arguments in reverse order.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    else err << app.help();
    return 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Command& cmd = commands.at(name);
  try {
    cmd.params->apply_config(load_config(cmd.config_path), name);
    const json resolved = cmd.params->resolved(name);
    Outputs outs{cmd.out_dir, {}};

    if (name == "transform-learn") {
      const auto inst = synthetic::make_transform_problem({tl.n, tl.t, {tl.alpha, tl.beta}, tl.seed});
      auto cfg = TrainConfig::transform_defaults();
      cfg.epochs = tl.epochs;
      cfg.learning_rate = tl.lr;
      cfg.seed = tl.seed;
      const auto rep = learn::train_transform(
          inst.problem, learn::default_layer_init(tl.layers, {tl.alpha, tl.beta}), cfg);
      outs.files["report.json"] = io::train_report_json(rep, resolved.dump());
      outs.files["loss.csv"] = io::loss_csv(rep.loss_curve);
      out << "target " << orders_str({tl.alpha, tl.beta}) << ", learned "
          << orders_str(rep.learned_orders) << " over " << tl.layers << " layer(s), final loss "
          << rep.final_loss << ", " << fmt(rep.wall_time, 2) << " s\n";
    } else if (name == "denoise-synth") {
      const auto p = synthetic::make_problem(ds_synth.spec());
      if (!save_data.empty()) {
        fs::create_directories(save_data);
        signals::write_timeseries_csv((fs::path(save_data) / "clean.csv").string(), p.clean);
        signals::write_timeseries_csv((fs::path(save_data) / "noisy.csv").string(), p.noisy);
        write_coords((fs::path(save_data) / "coords.csv").string(), p.coords);
        io::write_text_file((fs::path(save_data) / "sidecar.json").string(),
                            io::sidecar_json(p.spec));
        out << "wrote dataset to " << save_data << "\n";
      }
      run_denoise(synth_input(p), ds_train, ds_synth.seed, resolved, outs, out);
    } else if (name == "denoise-file") {
      run_denoise(load_file_input(df_file, *cmd.params), df_train, df_file.seed, resolved, outs, out);
    } else if (name == "grid-search") {
      DenoiseInput in;
      if (gs_file.clean.empty()) {
        in = synth_input(synthetic::make_problem(gs_synth.spec()));
      } else {
        gs_file.knn = gs_synth.knn;
        gs_file.shift = gs_synth.shift;
        gs_file.sigma = gs_synth.sigma;
        gs_file.seed = gs_synth.seed;
        gs_file.k_band = cmd.params->given("k_band") ? gs_synth.k_band : 0;
        gs_file.l_band = cmd.params->given("l_band") ? gs_synth.l_band : 0;
        in = load_file_input(gs_file, *cmd.params);
      }
      const FilterMode policy = parse_filter_mode(gs.policy);
      std::optional<DiagonalFilter> fixed;
      if (policy == FilterMode::Fixed) fixed = band_filter(in);
      const GridSpec grid{{gs.alpha_lo, gs.alpha_hi, gs.alpha_step},
                          {gs.beta_lo, gs.beta_hi, gs.beta_step}};
      const auto rep = bench::grid_search(in.clean, in.noisy, in.graph_op, in.time_op, grid, policy,
                                          fixed, gs.threads > 0 ? gs.threads : bench::default_threads());
      outs.files["report.json"] = io::bench_reports_json({rep}, resolved.dump());
      outs.files["cells.csv"] = io::cells_csv({rep});
      std::size_t failed = 0;
      for (const auto& c : rep.cells) failed += c.error.empty() ? 0 : 1;
      out << to_string(rep.method) << ": best orders "
          << orders_str({rep.best_cell().alpha, rep.best_cell().beta}) << ", SNR "
          << fmt(rep.snr, 2) << " dB, " << rep.cells.size() << " cells (" << failed
          << " failed) in " << fmt(rep.total_time, 2) << " s\n";
    } else if (name == "bench-runtime") {
      const auto reps = bench::runtime_bench(parse_sizes(br_sizes), parse_methods(br_methods), br);
      outs.files["report.json"] = io::bench_reports_json(reps, resolved.dump());
      outs.files["cells.csv"] = io::cells_csv(reps);
      for (const auto& r : reps) {
        out << std::left << std::setw(14) << to_string(r.method) << " N=" << r.n << " T=" << r.t
            << "  total " << fmt(r.total_time, 4) << " s";
        if (r.epochs > 0) out << "  per-epoch " << r.per_epoch_time << " s";
        out << "  SNR " << fmt(r.snr, 2) << " dB\n";
      }
    } else if (name == "selftest") {
      const auto results = selftest::run_all(st_seed);
      json checks = json::array();
      bool all = true;
      for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.name
            << " worst " << r.worst << " (tol " << r.tolerance << ")"
            << (r.passed || r.detail.empty() ? "" : "  " + r.detail) << "\n";
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"worst", r.worst},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
      }
      outs.files["report.json"] = json{{"config", resolved}, {"checks", checks}}.dump(2) + "\n";
      outs.write();
      return all ? 0 : 2;
    }
    outs.write();
    return 0;
  } catch (const Error& e) {
    err << "ljfrft " << name << ": " << e.what() << "\n";
    return is_numerical(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "ljfrft " << name << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ljfrft::cli
