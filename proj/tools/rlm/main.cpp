#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "manifest.hpp"
#include "rlm/error.hpp"

int main(int argc, char** argv) {
  using namespace rlm::cli;
  CLI::App app{"Random loop model with crosses and bars: tracing, identities, estimation, bounds."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(RLM_VERSION));
  std::string manifest_path;
  app.add_option("--manifest", manifest_path,
                 "Where to write the run manifest (default: <out>.manifest.json, else stderr)");
  auto commands = register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands)
    if (c.app->parsed()) cmd = &c;
  if (cmd == nullptr) return kUsageError;

  RunManifest manifest(cmd->app->get_name());
  manifest.set_params(collect_params(*cmd->app));
  int code = kOk;
  std::string error;
  try {
    code = cmd->run(manifest);
  } catch (const rlm::InvalidArgument& e) {
    code = kUsageError;
    error = e.what();
  } catch (const rlm::ParseError& e) {
    code = kUsageError;
    error = std::string("load error: ") + e.what();
  } catch (const rlm::BudgetExceeded& e) {
    code = kResourceError;
    error = e.what();
  } catch (const rlm::ConsistencyError& e) {
    code = kVerificationFailure;
    error = e.what();
  } catch (const std::exception& e) {
    code = kResourceError;
    error = e.what();
  }
  if (!error.empty()) std::cerr << "rlm " << cmd->app->get_name() << ": " << error << '\n';

  const auto record = manifest.finish(code, error).dump(2);
  std::string target = manifest_path;
  if (target.empty() && cmd->primary_output) {
    const std::string out = cmd->primary_output();
    if (!out.empty()) target = out + ".manifest.json";
  }
  if (target.empty()) {
    std::cerr << record << '\n';
  } else {
    std::ofstream f(target);
    f << record << '\n';
    if (!f) {
      std::cerr << "rlm: cannot write manifest " << target << '\n';
      if (code == kOk) code = kResourceError;
    }
  }
  return code;
}
