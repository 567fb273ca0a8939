#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ljfrft/bench.hpp"
#include "ljfrft/filtering.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/signals.hpp"
#include "ljfrft/synthetic.hpp"

namespace ljfrft {

namespace io {

// JSON serialization. `config_json` must be a JSON document; it is embedded
// verbatim under "config".
std::string train_report_json(const TrainReport& rep, std::string_view config_json = "{}");
std::string bench_reports_json(const std::vector<BenchReport>& reps,
                               std::string_view config_json = "{}");

std::string filter_json(const DiagonalFilter& h);
DiagonalFilter parse_filter_json(std::string_view text);

/// Generator recipe stored next to a saved synthetic dataset. Every field is
/// required on input.
std::string sidecar_json(const synthetic::SyntheticSpec& spec);
synthetic::SyntheticSpec parse_sidecar_json(std::string_view text);

// CSV output.
std::string cells_csv(const std::vector<BenchReport>& reps);
std::string loss_csv(const std::vector<double>& loss_curve);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace io
}  // namespace ljfrft
