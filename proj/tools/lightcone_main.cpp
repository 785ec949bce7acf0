#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "lightcone/algebra.hpp"
#include "lightcone/laws.hpp"
#include "lightcone/models.hpp"
#include "lightcone/normalize.hpp"

namespace {

using namespace lightcone;

struct CliOptions {
  RunConfig config;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--samples", opt.config.samples, "sample points per check")->capture_default_str();
  cmd->add_option("--tol", opt.config.tol, "pass tolerance")->capture_default_str();
  cmd->add_option("--seed", opt.config.seed, "sampling seed override");
  cmd->add_option("--format", opt.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--node-budget", opt.config.node_budget, "expression node budget per curvature")
      ->capture_default_str();
  cmd->add_option("--fd-fallback", [&opt](const std::vector<std::string>& vals) {
        opt.config.fd_fallback = vals.at(0) == "on";
        return true;
      }, "finite-difference fallback when the budget is exceeded: on|off")
      ->expected(1)
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--random-fields", opt.config.random_fields,
                  "extra random polynomial vector fields for curvature checks")
      ->capture_default_str();
  cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
}

void deliver(const CliOptions& opt, const std::string& text, const std::string& json) {
  const std::string& payload = opt.format == "json" ? json : text;
  if (opt.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot write output file: " + opt.out);
    f << payload << '\n';
  }
}

Geometry load(const std::string& path, const RunConfig& config) {
  return load_spec(path, config);
}

int report_exit(const Report& r) { return r.all_passed() ? 0 : 2; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lightlike tractor calculus toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string spec_path;
  int algebra_m = 3;
  std::string emit_model = "cone";
  int emit_m = 3;

  auto* validate = app.add_subcommand("validate", "structural checks and A_Z profile");
  validate->add_option("spec", spec_path, "geometry spec file (JSON)")->required();
  add_common(validate, opt);

  auto* laws = app.add_subcommand("laws", "screen and transformation-law identity suites");
  laws->add_option("spec", spec_path, "geometry spec file (JSON)")->required();
  add_common(laws, opt);

  auto* normalize = app.add_subcommand("normalize", "run the normalization pipeline");
  normalize->add_option("spec", spec_path, "geometry spec file (JSON)")->required();
  add_common(normalize, opt);

  auto* curvature = app.add_subcommand("curvature", "curvature tables and the scale-bundle check");
  curvature->add_option("spec", spec_path, "geometry spec file (JSON)")->required();
  add_common(curvature, opt);

  auto* algebra_cmd = app.add_subcommand("model-algebra", "invariant suite of the model algebra");
  algebra_cmd->add_option("--m", algebra_m, "screen dimension")->capture_default_str();
  add_common(algebra_cmd, opt);

  auto* emit = app.add_subcommand("emit", "write a built-in geometry as a spec file");
  emit->add_option("model", emit_model, "cone | hyperplane | sasakian")->required();
  emit->add_option("--m", emit_m, "screen dimension (contact rank for sasakian)")
      ->capture_default_str();
  bool emit_normalized = false;
  emit->add_flag("--normalized", emit_normalized,
                 "attach the normalized structure (cone only, m >= 3)");
  add_common(emit, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      Geometry g = load(spec_path, opt.config);
      Report r = run_validate(g, opt.config);
      deliver(opt, r.to_text(), r.to_json());
      return report_exit(r);
    }
    if (laws->parsed()) {
      Geometry g = load(spec_path, opt.config);
      Report r = run_screen_identities(g, opt.config);
      r.merge(run_structure_laws(g, opt.config));
      deliver(opt, r.to_text(), r.to_json());
      return report_exit(r);
    }
    if (normalize->parsed()) {
      Geometry g = load(spec_path, opt.config);
      if (!g.tau0) throw std::runtime_error("normalize: the spec must provide tau0");
      NormalizationResult res = normalize_structure(g.tau0, opt.config);
      deliver(opt, res.report.to_text(), res.to_json(*g.structure));
      return report_exit(res.report);
    }
    if (curvature->parsed()) {
      Geometry g = load(spec_path, opt.config);
      Report r = run_curvature_suite(g, opt.config);
      deliver(opt, r.to_text(), r.to_json());
      return report_exit(r);
    }
    if (algebra_cmd->parsed()) {
      Report r = algebra::run_suite(algebra_m, opt.config.seed ? opt.config.seed : 7);
      deliver(opt, r.to_text(), r.to_json());
      return report_exit(r);
    }
    if (emit->parsed()) {
      Geometry g = emit_model == "cone"        ? cone(emit_m, opt.config)
                   : emit_model == "hyperplane" ? hyperplane(emit_m, opt.config)
                   : emit_model == "sasakian"   ? sasakian(emit_m, opt.config)
                                                : throw std::runtime_error("unknown model: " +
                                                                           emit_model);
      if (emit_normalized) {
        NormalizationResult res = normalize_structure(g.tau0, opt.config);
        if (!res.completed)
          throw std::runtime_error("emit --normalized: pipeline did not complete:\n" +
                                   res.report.to_text());
        g.compat = std::move(res.structure);
      }
      std::string json = to_spec_json(g);
      deliver(opt, json, json);
      return 0;
    }
  } catch (const lightcone::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    return msg.find("spec") != std::string::npos || msg.find("file") != std::string::npos ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
