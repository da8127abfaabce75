// mvprob: command-line front end over JSON documents.

#include "mvprob/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using mvp::cli::Options;

struct Leaf {
  CLI::App* app;
  std::string command;
  std::string sub;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of MV-algebraic probability on finite instances"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  Options o;
  std::string out_path;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every sampled check");
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--precision", o.precision, "MPFR precision in bits for interval enclosures");

  std::vector<Leaf> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& command,
                  const std::string& sub) {
    CLI::App* c = parent->add_subcommand(name, desc);
    c->add_option("--doc", o.doc, "Input document")->required();
    leaves.push_back({c, command, sub});
    return c;
  };
  auto str = [](CLI::App* c, const std::string& flag, std::optional<std::string>& dst, const std::string& desc) {
    c->add_option(flag, dst, desc);
  };
  auto num = [](CLI::App* c, const std::string& flag, std::optional<long>& dst, const std::string& desc) {
    c->add_option(flag, dst, desc);
  };

  auto* axioms = leaf(&app, "check-axioms", "Verify MV / PMV / RMV / fMV axioms", "check-axioms", "");
  str(axioms, "--algebra", o.algebra, "Algebra name");
  str(axioms, "--level", o.level, "MV, PMV, RMV or fMV");
  str(axioms, "--mode", o.mode, "exhaustive, sample or bounded");
  num(axioms, "--count", o.count, "Sample count");
  num(axioms, "--bound", o.bound, "Chang window bound");

  auto* state = app.add_subcommand("state", "State queries");
  state->require_subcommand(1);
  for (const char* sub : {"eval", "faithful", "metric", "quotient"}) {
    auto* c = leaf(state, sub, std::string("state ") + sub, "state", sub);
    str(c, "--state", o.state, "State name");
    if (std::string(sub) == "eval") str(c, "--element", o.element, "Element name");
    if (std::string(sub) == "metric") {
      str(c, "--a", o.a, "First element");
      str(c, "--b", o.b, "Second element");
    }
    if (std::string(sub) == "quotient") num(c, "--samples", o.samples, "Sweep size on infinite carriers");
  }

  auto* spectra = app.add_subcommand("spectra", "Ideals, radical, semisimplicity");
  spectra->require_subcommand(1);
  for (const char* sub : {"ideals", "radical", "semisimple"}) {
    auto* c = leaf(spectra, sub, std::string("spectra ") + sub, "spectra", sub);
    str(c, "--algebra", o.algebra, "Algebra name");
  }

  auto* embed = leaf(&app, "embed", "Measure representation and integral identity", "embed", "");
  str(embed, "--state", o.state, "State name");
  num(embed, "--samples", o.samples, "Sweep size on infinite carriers");

  auto* moments = app.add_subcommand("moments", "Hausdorff moment problem");
  moments->require_subcommand(1);
  for (const char* sub : {"check", "of-measure", "reconstruct", "fit"}) {
    auto* c = leaf(moments, sub, std::string("moments ") + sub, "moments", sub);
    if (std::string(sub) == "of-measure") {
      str(c, "--measure", o.measure, "Measure on rational grid points");
      num(c, "--order", o.order, "Highest moment order");
    } else {
      str(c, "--moments", o.moments, "Moment sequence name");
    }
    if (std::string(sub) == "reconstruct" || std::string(sub) == "fit") num(c, "--grid", o.grid, "Grid size N");
  }

  auto* holder = leaf(&app, "holder", "Hoelder inequality", "holder", "");
  str(holder, "--state", o.state, "State name");
  str(holder, "--a", o.a, "First element");
  str(holder, "--b", o.b, "Second element");
  str(holder, "--p", o.p, "Exponent p");
  str(holder, "--q", o.q, "Exponent q");

  auto* product = app.add_subcommand("product", "Product spaces and independence");
  product->require_subcommand(1);
  for (const char* sub : {"build", "verify-independence"}) {
    auto* c = leaf(product, sub, std::string("product ") + sub, "product", sub);
    str(c, "--left", o.left, "Left state");
    str(c, "--right", o.right, "Right state");
  }
  auto* fact = leaf(product, "factorize", "Factor a bounded bilinear map through beta", "product", "factorize");
  str(fact, "--bilinear", o.bilinear, "Bilinear map name");
  num(fact, "--samples", o.samples, "Extra sampled boundedness checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mvp::cli::kExitInput;
  }

  if (seed_opt->count() > 0) o.seed = seed;

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves)
    if (l.app->parsed()) chosen = &l;
  if (!chosen) return mvp::cli::kExitInput;

  try {
    mvp::cli::Report report = mvp::cli::run_command(chosen->command, chosen->sub, o);
    std::string text = report.dump();
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return mvp::cli::kExitInput;
      }
      f << text;
    }
    return report.exit_code();
  } catch (const mvp::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mvp::cli::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mvp::cli::kExitInput;
  }
}
