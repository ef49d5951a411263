#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rds/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reaction-diffusion solver for alpha U + beta V <=> gamma W"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress summary lines")->configurable(false);
  app.fallthrough();

  std::string config;
  int code = rds::kExitOk;
  const rds::CommandIo io{std::cout, std::cerr, false};

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const std::filesystem::path&, rds::CommandIo);
  };
  const Entry entries[] = {
      {"run", "Integrate a scenario and write its diagnostics series", rds::cmd_run},
      {"classify", "Report which global-existence hypothesis a parameter tuple meets",
       rds::cmd_classify},
      {"verify-lemmas", "Check lemma ratios at two resolutions", rds::cmd_verify_lemmas},
      {"sweep", "Classify (and optionally run) a Cartesian grid of parameters", rds::cmd_sweep},
      {"convergence", "Measure temporal and spatial self-convergence orders",
       rds::cmd_convergence},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("config", config, "JSON configuration file")->required();
    sub->callback([&, fn = e.fn] {
      code = fn(config, rds::CommandIo{io.out, io.err, quiet});
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : rds::kExitConfigError;
  }
  return code;
}
