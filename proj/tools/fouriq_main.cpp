// Copyright 2026 The Fouriq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "fouriq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fouriq: Fourier-coefficient extraction and learning experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed_flag = -1;
  bool oracle = false;

  auto add_common = [&](CLI::App* sub, bool with_oracle) {
    sub->add_option("--config", config_path, "experiment configuration (JSON)")->required();
    sub->add_option("--seed", seed_flag, "override the config seed");
    sub->add_option("--out", out_dir, "output directory override");
    if (with_oracle)
      sub->add_flag("--oracle", oracle, "also emit the classical grid-DFT table and a diff summary");
  };

  add_common(app.add_subcommand("extract", "extract the Fourier coefficient table of a circuit"),
             true);
  add_common(app.add_subcommand("learn", "run the regression pipeline on a concept family"), false);
  add_common(app.add_subcommand("trotter", "sweep Trotter step counts against the exact evolution"),
             false);
  add_common(app.add_subcommand("kernel", "run the kernel ridge pipeline on a concept family"),
             false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : fouriq::kExitConfig;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  std::optional<uint64_t> seed_override;
  if (seed_flag >= 0) seed_override = static_cast<uint64_t>(seed_flag);

  try {
    const fouriq::RunContext ctx =
        fouriq::load_context(config_path, seed_override, out_dir, oracle);
    return fouriq::run_command(experiment, ctx);
  } catch (const fouriq::ParseError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"exit_code", fouriq::kExitConfig}}.dump()
              << "\n";
    return fouriq::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"exit_code", fouriq::kExitInternal}}.dump()
              << "\n";
    return fouriq::kExitInternal;
  }
}
