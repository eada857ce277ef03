#include <iostream>

#include "CLI11.hpp"
#include "haarcp/cli.hpp"

int main(int argc, char **argv) {
  namespace cli = haarcp::cli;
  CLI::App app{"haarcp: exact commuting probability of finite and finite-by-torus groups"};
  app.require_subcommand(1);

  cli::Command cmd;
  try {
    cmd.cap = cli::cap_from_env();
  } catch (const haarcp::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInputError;
  }

  const std::pair<const char *, const char *> help[] = {
      {"cp", "cp of a group by pair counting, class counting and the central-coset formula"},
      {"center", "center of a group (--matrix prints the commutation matrix)"},
      {"fc", "FC-center of a compact model"},
      {"classify", "high-cp classification of a group"},
      {"isoclinic", "search for an isoclinism between two groups"},
      {"stem", "find a stem group isoclinic to a group in the built-in corpus"},
      {"verify-t1", "check cp = cp(FC)/|G:FC|^2 and the stem-group clause on a model"},
      {"verify-t2", "check the 1/4 and 3/40 statements on a group or a .model file"},
      {"scan", "census of a corpus directory, group list, or 'builtin'"},
      {"mc", "Monte Carlo estimate of cp for a compact model"},
  };
  for (const auto &[verb, text] : help) {
    CLI::App *sub = app.add_subcommand(verb, text);
    sub->add_option("inputs", cmd.inputs, "group names/specs or model file")->expected(0, -1);
    sub->add_option("--seed", cmd.seed, "Monte Carlo seed");
    sub->add_option("--samples", cmd.samples, "Monte Carlo sample count");
    sub->add_option("--workers", cmd.workers, "Monte Carlo worker threads");
    sub->add_option("--threshold", cmd.threshold, "exact fraction, e.g. 3/40");
    sub->add_option("--cap", cmd.cap, "closure cap (default from HAARCP_CAP or 20000)");
    sub->add_option("--iso-cap", cmd.iso_cap, "isomorphism search cap");
    sub->add_flag("--machine", cmd.machine, "pipe-delimited output");
    sub->add_flag("--matrix", cmd.matrix, "print the commutation matrix (center)");
    sub->callback([&cmd, verb = std::string(verb)] { cmd.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return cli::kExitInputError;
  }
  return cli::run(cmd, std::cout, std::cerr);
}
