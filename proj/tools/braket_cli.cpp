// braket: model checker and expression evaluator for finite-dimensional
// bra-ket algebra.
//
//   braket check    --config model.json [--suite NAME]... [--tol X] [--format json|text]
//   braket spectral --config model.json [--format json|text]
//   braket eval     --config model.json --expr "<a|b>"
//   braket demo     [--emit-config] [--format json|text]
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 bad
// configuration or unparseable input. BRAKET_RHS_SEED fixes the seed of
// the randomized property checks (default 42).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "braket/braket.hpp"

namespace {

constexpr const char *kDemoModel = R"json({
  "dim": 2,
  "factors": 2,
  "tol": 1e-10,
  "observables": {
    "A": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]
  },
  "vectors": {
    "a": [[1, 0], [0, 0]],
    "b": [[0, 0], [1, 0]],
    "l1": [[1, 0], [0, 0]],
    "l2": [[0, 0], [1, 0]],
    "p": [[0.6, 0], [0.8, 0]],
    "q": [[0.8, 0], [-0.6, 0]]
  },
  "expressions": [
    {"expr": "<a|a>", "expect": [1, 0]},
    {"expr": "<a|b>", "expect": [0, 0]},
    {"expr": "P_asym (|a> (x) |a>)"},
    {"expr": "(<l1| (x) <l2|) (A (|l1> (x) |l2>))", "expect": [0, 0]},
    {"expr": "(<l1| (x) <l1|) (A (|p> (x) |q>))", "expect": [0.96, 0]},
    {"expr": "(|a> (x) |b>)' (|a> (x) |b>)", "expect": [1, 0]}
  ]
}
)json";

enum class Format { Json, Text };

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> suite_names;
  std::optional<double> tol;
  Format format = Format::Json;
  std::string expr;
};

void add_format_flag(CLI::App *cmd, Format &format) {
  cmd->add_option_function<std::string>(
         "--format",
         [&format](const std::string &value) {
           if (value == "json") {
             format = Format::Json;
           } else if (value == "text") {
             format = Format::Text;
           } else {
             throw CLI::ValidationError("--format must be json or text");
           }
         },
         "Output format (json or text)")
      ->option_text("{json,text}");
}

int emit_reports(const std::vector<braket::CheckReport> &reports, Format format) {
  bool all_pass = true;
  for (const braket::CheckReport &r : reports) {
    std::cout << (format == Format::Json ? braket::to_json_line(r) : braket::to_text_line(r))
              << "\n";
    all_pass = all_pass && r.passed();
  }
  return all_pass ? 0 : 1;
}

int run_check(const braket::ModelFile &model, const CommonArgs &args) {
  braket::SuiteOptions opts;
  opts.seed = braket::seed_from_env();
  opts.tol_override = args.tol;
  const std::vector<braket::CheckReport> reports =
      braket::run_checks(model, args.suite_names, opts);
  return emit_reports(reports, args.format);
}

int run_spectral(const braket::ModelFile &model, const CommonArgs &args) {
  using braket::detail::format_real;
  const braket::CompositeObservable observable = model.composite();
  const braket::SpectralDecomposition sd =
      braket::spectral_decompose(observable, args.tol.value_or(model.config.tol));
  for (std::size_t p = 0; p < sd.size(); ++p) {
    const braket::GeneralizedEigenpair &pair = sd.pair(p);
    if (args.format == Format::Json) {
      std::string line = "{\"index\":" + std::to_string(p) + ",\"lambdas\":[";
      for (std::size_t k = 0; k < pair.lambdas.size(); ++k) {
        if (k) line += ",";
        line += format_real(pair.lambdas[k]);
      }
      line += "],\"mult\":[";
      for (std::size_t k = 0; k < pair.mult_indices.size(); ++k) {
        if (k) line += ",";
        line += std::to_string(pair.mult_indices[k]);
      }
      line += "],\"lambda_sum\":" + format_real(pair.lambda_sum) + ",\"weight\":" +
              format_real(pair.weight) + ",\"ket\":[";
      const std::vector<braket::Cplx> &rep = pair.ket.rep().dense();
      for (std::size_t i = 0; i < rep.size(); ++i) {
        if (i) line += ",";
        line += "[" + format_real(rep[i].real()) + "," + format_real(rep[i].imag()) + "]";
      }
      line += "]}";
      std::cout << line << "\n";
    } else {
      std::string line = "pair " + std::to_string(p) + ": lambdas (";
      for (std::size_t k = 0; k < pair.lambdas.size(); ++k) {
        if (k) line += ", ";
        line += format_real(pair.lambdas[k]) + "#" + std::to_string(pair.mult_indices[k]);
      }
      line += ") sum " + format_real(pair.lambda_sum);
      std::cout << line << "\n";
    }
  }
  return 0;
}

int run_eval(const braket::ModelFile &model, const CommonArgs &args) {
  const braket::dsl::Bindings bindings = model.bindings();
  const braket::dsl::Value value = braket::dsl::evaluate(args.expr, bindings);
  std::cout << braket::dsl::describe(value, args.tol.value_or(model.config.tol)) << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Numerical bra-ket algebra checks for finite-dimensional identical-particle models"};
  app.require_subcommand(1);

  CommonArgs check_args, spectral_args, eval_args, demo_args;
  bool demo_emit_config = false;

  CLI::App *check = app.add_subcommand("check", "Run the model's invariant check suites");
  check->add_option("--config", check_args.config_path, "Model description file")->required();
  check->add_option("--suite", check_args.suite_names, "Suite to run (repeatable)");
  check->add_option("--tol", check_args.tol, "Override every check tolerance");
  add_format_flag(check, check_args.format);

  CLI::App *spectral = app.add_subcommand("spectral", "Emit the spectral decomposition");
  spectral->add_option("--config", spectral_args.config_path, "Model description file")->required();
  spectral->add_option("--tol", spectral_args.tol, "Eigen-residual tolerance");
  add_format_flag(spectral, spectral_args.format);

  CLI::App *eval = app.add_subcommand("eval", "Evaluate a Dirac-notation expression");
  eval->add_option("--config", eval_args.config_path, "Model description file")->required();
  eval->add_option("--expr", eval_args.expr, "Expression to evaluate")->required();
  eval->add_option("--tol", eval_args.tol, "Zero-detection tolerance");

  CLI::App *demo = app.add_subcommand("demo", "Run every check on the bundled two-qubit model");
  demo->add_flag("--emit-config", demo_emit_config, "Print the bundled model instead");
  demo->add_option("--tol", demo_args.tol, "Override every check tolerance");
  add_format_flag(demo, demo_args.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      return run_check(braket::ModelFile::load(check_args.config_path), check_args);
    }
    if (spectral->parsed()) {
      return run_spectral(braket::ModelFile::load(spectral_args.config_path), spectral_args);
    }
    if (eval->parsed()) {
      return run_eval(braket::ModelFile::load(eval_args.config_path), eval_args);
    }
    if (demo->parsed()) {
      if (demo_emit_config) {
        std::cout << kDemoModel;
        return 0;
      }
      return run_check(braket::ModelFile::from_json_text(kDemoModel), demo_args);
    }
  } catch (const braket::dsl::parse_error &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const braket::dsl::eval_error &e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 2;
  } catch (const braket::error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
