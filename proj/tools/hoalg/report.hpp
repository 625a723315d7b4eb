#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hoalg/algebras.hpp"
#include "json.hpp"

namespace hoalg::cli {

using json = nlohmann::json;

constexpr const char* kSchema = "hoalg-report/1";

struct Options {
  int arity_bound = 5;
  int weight_bound = 4;
  std::optional<int> stage;
  std::uint64_t seed = 1;
};

/// Commands: check, cohomology, transfer, obstructions, envelope, alt,
/// harrison-split, compare-com-ass, compare-lie-ass, certify. The result is the
/// full report (envelope included). Library errors propagate.
json run_command(const std::string& command, const DgAlgebra& a, const Options& o);
const std::vector<std::string>& command_names();

/// Envelope used for failures: status "error" with a machine-readable kind.
json error_report(const std::string& command, const std::string& kind, const std::string& reason);

std::string render_json(const json& report);
std::string render_text(const json& report);

}  // namespace hoalg::cli
