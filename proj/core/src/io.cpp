#include "ljfrft/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "csv_util.hpp"
#include "json.hpp"
#include "ljfrft/error.hpp"

namespace ljfrft::io {

using nlohmann::json;

namespace {

// JSON has no infinity; encode non-finite values as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json parse_doc(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

json orders(const OrderPair& p) { return json::array({p.first, p.second}); }

json filter_obj(const DiagonalFilter& h) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < h.coeffs.size(); ++i) {
    coeffs.push_back(json::array({h.coeffs[i].real(), h.coeffs[i].imag()}));
  }
  return {{"mode", std::string(to_string(h.mode))}, {"coeffs", coeffs}};
}

template <typename T>
T get_field(const json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": field '" + key + "': " + e.what());
  }
}

}  // namespace

std::string train_report_json(const TrainReport& rep, std::string_view config_json) {
  json j;
  j["config"] = parse_doc(config_json, "config");
  j["learned_orders"] = orders(rep.learned_orders);
  json layers = json::array();
  for (const auto& l : rep.layer_orders) layers.push_back(orders(l));
  j["layer_orders"] = layers;
  if (rep.learned_filter) j["learned_filter"] = filter_obj(*rep.learned_filter);
  j["final_loss"] = number(rep.final_loss);
  j["snr_out"] = number(rep.snr_out);
  j["wall_time"] = rep.wall_time;
  j["per_epoch_time"] = rep.per_epoch_time;
  j["epochs_run"] = rep.epochs_run;
  j["best_restart"] = rep.best_restart;
  json restarts = json::array();
  for (const auto& r : rep.restarts) {
    restarts.push_back({{"init_orders", orders(r.init_orders)},
                        {"learned_orders", orders(r.learned_orders)},
                        {"final_loss", number(r.final_loss)},
                        {"snr_out", number(r.snr_out)}});
  }
  j["restarts"] = restarts;
  return j.dump(2) + "\n";
}

std::string bench_reports_json(const std::vector<BenchReport>& reps, std::string_view config_json) {
  json j;
  j["config"] = parse_doc(config_json, "config");
  json arr = json::array();
  for (const auto& r : reps) {
    json o = {{"method", std::string(to_string(r.method))},
              {"n", r.n},
              {"t", r.t},
              {"cells", r.cells.size()},
              {"snr", number(r.snr)},
              {"total_time", r.total_time}};
    if (!r.cells.empty()) {
      const auto& b = r.best_cell();
      o["best"] = {{"alpha", b.alpha}, {"beta", b.beta}, {"snr", number(b.snr)}};
    }
    std::size_t failed = 0;
    for (const auto& c : r.cells) failed += c.error.empty() ? 0 : 1;
    o["failed_cells"] = failed;
    if (r.epochs > 0) {
      o["epochs"] = r.epochs;
      o["per_epoch_time"] = r.per_epoch_time;
    }
    arr.push_back(o);
  }
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

std::string filter_json(const DiagonalFilter& h) { return filter_obj(h).dump(2) + "\n"; }

DiagonalFilter parse_filter_json(std::string_view text) {
  const json j = parse_doc(text, "filter");
  DiagonalFilter h;
  h.mode = parse_filter_mode(get_field<std::string>(j, "mode", "filter"));
  const auto pairs = get_field<std::vector<std::vector<double>>>(j, "coeffs", "filter");
  h.coeffs.resize(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].size() != 2) {
      throw Error(ErrorCode::ParseError, "filter: coefficient " + std::to_string(i) +
                                             " is not a [re, im] pair");
    }
    h.coeffs[static_cast<Eigen::Index>(i)] = cplx(pairs[i][0], pairs[i][1]);
  }
  return h;
}

std::string sidecar_json(const synthetic::SyntheticSpec& spec) {
  json j = {{"n", spec.n},
            {"t", spec.t},
            {"m", spec.m},
            {"k_band", spec.band.k_band},
            {"l_band", spec.band.l_band},
            {"overlap", spec.overlap},
            {"sigma", spec.sigma},
            {"true_alpha", spec.true_orders.first},
            {"true_beta", spec.true_orders.second},
            {"knn", spec.knn},
            {"shift", std::string(graphs::to_string(spec.shift))},
            {"seed", spec.seed}};
  return j.dump(2) + "\n";
}

synthetic::SyntheticSpec parse_sidecar_json(std::string_view text) {
  const json j = parse_doc(text, "sidecar");
  synthetic::SyntheticSpec s;
  s.n = get_field<Eigen::Index>(j, "n", "sidecar");
  s.t = get_field<Eigen::Index>(j, "t", "sidecar");
  s.m = get_field<Eigen::Index>(j, "m", "sidecar");
  s.band.k_band = get_field<Eigen::Index>(j, "k_band", "sidecar");
  s.band.l_band = get_field<Eigen::Index>(j, "l_band", "sidecar");
  s.overlap = get_field<Eigen::Index>(j, "overlap", "sidecar");
  s.sigma = get_field<double>(j, "sigma", "sidecar");
  s.true_orders = {get_field<double>(j, "true_alpha", "sidecar"),
                   get_field<double>(j, "true_beta", "sidecar")};
  s.knn = get_field<int>(j, "knn", "sidecar");
  s.shift = graphs::parse_shift_kind(get_field<std::string>(j, "shift", "sidecar"));
  s.seed = get_field<std::uint64_t>(j, "seed", "sidecar");
  return s;
}

std::string cells_csv(const std::vector<BenchReport>& reps) {
  std::ostringstream out;
  out << "method,n,t,alpha,beta,snr,wall_time,error\n";
  for (const auto& r : reps) {
    for (const auto& c : r.cells) {
      out << to_string(r.method) << ',' << r.n << ',' << r.t << ',' << detail::format_real(c.alpha)
          << ',' << detail::format_real(c.beta) << ',' << detail::format_real(c.snr) << ','
          << detail::format_real(c.wall_time) << ',';
      // Quote error text; it may contain commas.
      if (!c.error.empty()) {
        out << '"';
        for (char ch : c.error) out << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
        out << '"';
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string loss_csv(const std::vector<double>& loss_curve) {
  std::ostringstream out;
  out << "epoch,loss\n";
  for (std::size_t e = 0; e < loss_curve.size(); ++e) {
    out << e + 1 << ',' << detail::format_real(loss_curve[e]) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::ConfigError, "write failed for '" + path + "'");
}

}  // namespace ljfrft::io
