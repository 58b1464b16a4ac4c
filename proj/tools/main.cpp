#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace surfdist::cli;
  CLI::App app{"Growth vectors and invariants of surface distributions"};
  std::string command;
  std::optional<std::string> target;
  Options options;
  app.add_option("command", command, "check | invariants | classify | growth | curvature | report | catalog")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("file", target, ".surf file, catalog:<name>, or an entry name for catalog");
  app.add_option("--space", options.space, "m5 | m6 | m6hat")->check(CLI::IsMember({"m5", "m6", "m6hat"}));
  app.add_option("--s0", options.s0, "level of the s coordinate");
  app.add_option("--bundle", options.bundle, "b3 | e4")->check(CLI::IsMember({"b3", "e4"}));
  app.add_flag("--json", options.json, "print JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_parse_failure;
  }
  const Outcome out = run(command, target, options);
  (out.exit_code == exit_ok || out.exit_code == exit_assertion_failed ? std::cout : std::cerr) << out.text;
  return out.exit_code;
}
