#include "flagacs/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace flagacs;

namespace {

int write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << path << " for writing\n";
    return 2;
  }
  out << text;
  return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagacs: K-invariant complex structures on split flag manifolds"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string families = "A:1-5,B:2-4,C:2-6,D:4-6,G:2";
  std::string format = "json", model = "auto", out;
  std::optional<std::size_t> flip;

  auto* classify_cmd = app.add_subcommand("classify", "Sweep all flags of the given families");
  classify_cmd->add_option("--families", families, "e.g. A:1-5,B:2-4,G:2");
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  classify_cmd->add_option("--model", model)->check(CLI::IsMember({"auto", "n_minus", "m_theta", "both"}));
  classify_cmd->add_option("--seed", cfg.seed);
  classify_cmd->add_option("--samples", cfg.samples);
  classify_cmd->add_option("--threads", cfg.threads, "0 uses all cores");
  classify_cmd->add_option("--flip-extraspecial", flip, "negate one extraspecial sign");
  classify_cmd->add_flag("--timings", cfg.timings);
  classify_cmd->add_option("--out", out, "output file (default stdout)");

  std::string type_text = "A", theta_text;
  int rank = 1;
  auto* inspect_cmd = app.add_subcommand("inspect", "Evidence dump for one flag");
  inspect_cmd->add_option("--type", type_text)->required()->check(CLI::IsMember({"A", "B", "C", "D", "G"}));
  inspect_cmd->add_option("--rank", rank)->required();
  inspect_cmd->add_option("--theta", theta_text, "comma-separated simple roots, e.g. \"l3-l4,2l4\"");
  inspect_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  inspect_cmd->add_option("--model", model)->check(CLI::IsMember({"auto", "n_minus", "m_theta", "both"}));
  inspect_cmd->add_option("--seed", cfg.seed);
  inspect_cmd->add_option("--samples", cfg.samples);
  inspect_cmd->add_option("--flip-extraspecial", flip);
  inspect_cmd->add_option("--out", out);

  std::string report_path;
  auto* verify_cmd = app.add_subcommand("verify", "Replay every certificate in a report");
  verify_cmd->add_option("report", report_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (flip) cfg.chevalley.flip_extraspecial = *flip;
    cfg.model = parse_model_preference(model);
    if (*classify_cmd) {
      cfg.types = parse_families(families);
      ClassificationReport rep = classify(cfg);
      std::string text = format == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep);
      return write_out(text, out);
    }
    if (*inspect_cmd) {
      LieType t{type_text[0], rank};
      t.validate();
      RootSystem rs(t);
      FlagRecord rec = analyze_flag(t, parse_theta(rs, theta_text), cfg);
      std::string text = format == "json" ? inspect_json(rec).dump(2) + "\n" : inspect_text(rec);
      return write_out(text, out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (*verify_cmd) {
    std::ifstream in(report_path);
    if (!in) {
      std::cerr << "cannot read " << report_path << "\n";
      return 2;
    }
    Json report;
    try {
      report = Json::parse(in);
    } catch (const Json::parse_error& e) {
      std::cerr << "malformed report: " << e.what() << "\n";
      return 2;
    }
    std::vector<std::string> failures;
    try {
      failures = verify_report(report);
    } catch (const std::exception& e) {
      failures.push_back(std::string("malformed report: ") + e.what());
    }
    for (const auto& f : failures) std::cerr << "FAIL " << f << "\n";
    std::size_t n = report.contains("flags") ? report["flags"].size() : 0;
    std::cout << (failures.empty() ? "verified " : "failed ") << n << " flags, " << failures.size() << " failures\n";
    return failures.empty() ? 0 : 1;
  }
  return 0;
}
