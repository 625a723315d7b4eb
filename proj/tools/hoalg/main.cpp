#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hoalg/algebra_file.hpp"
#include "hoalg/report.hpp"

using namespace hoalg;

namespace {

int emit(const cli::json& report, const std::string& format, const std::string& out) {
  std::string text = format == "text" ? cli::render_text(report) : cli::render_json(report);
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "hoalg: cannot write '" << out << "'\n";
    return 2;
  }
  f << text;
  return 0;
}

const std::map<std::string, std::string> kHelp{
    {"check", "verify d^2 = 0, Leibniz and associativity/commutativity/Jacobi"},
    {"cohomology", "cohomology algebra with representatives"},
    {"transfer", "minimal P-infinity model on cohomology up to the arity bound"},
    {"obstructions", "obstruction sequence in the native operadic complex"},
    {"certify", "obstructions plus the degree-window certificate"},
    {"envelope", "truncated enveloping algebra, PBW, symmetrization, Quillen map (Lie)"},
    {"alt", "Alt chain-map rechecks on random cochains of H(L) (Lie)"},
    {"harrison-split", "Barr splitting of Hochschild cochains of H(A) (Com)"},
    {"compare-com-ass", "Harrison vs Hochschild formality verdicts (Com)"},
    {"compare-lie-ass", "Chevalley-Eilenberg vs envelope Hochschild verdicts (Lie)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homotopy-algebra workbench"};
  app.set_version_flag("--version", std::string("hoalg ") + HOALG_VERSION);
  app.require_subcommand(1);

  cli::Options opts;
  std::string file, format = "json", out;
  int stage = 0;
  for (const auto& name : cli::command_names()) {
    auto* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("file", file, "algebra file")->required();
    sub->add_option("--arity-bound", opts.arity_bound, "arity bound N")->capture_default_str();
    sub->add_option("--weight-bound", opts.weight_bound, "envelope word-length bound W")->capture_default_str();
    sub->add_option("--stage", stage, "obstruction stage bound (default: arity bound)");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    sub->add_option("--seed", opts.seed, "seed for randomized rechecks")->capture_default_str();
    sub->add_option("--out", out, "write the report here instead of stdout");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  std::string command = app.get_subcommands().front()->get_name();
  if (stage) opts.stage = stage;

  cli::json report;
  int code = 0;
  try {
    DgAlgebra a = load_algebra(file);
    report = cli::run_command(command, a, opts);
  } catch (const ParseError& e) {
    report = cli::error_report(command, "parse", e.what());
    report["error"]["line"] = e.line();
    report["error"]["column"] = e.column();
    code = 2;
  } catch (const CertificationError& e) {
    report = cli::error_report(command, "certification", e.what());
    code = 2;
  } catch (const InputError& e) {
    report = cli::error_report(command, "input", e.what());
    code = 2;
  } catch (const TruncationOverflow& e) {
    report = cli::error_report(command, "truncation", e.what());
    code = 2;
  } catch (const InvariantViolation& e) {
    report = cli::error_report(command, "invariant", e.what());
    code = 3;
  } catch (const std::exception& e) {
    report = cli::error_report(command, "internal", e.what());
    code = 3;
  }
  if (code) std::cerr << "hoalg: " << report["error"]["reason"].get<std::string>() << "\n";
  int w = emit(report, format, out);
  return code ? code : w;
}
