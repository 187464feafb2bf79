// Copyright 2026 The Pitchside Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "common.hpp"
#include "pitchside/error.hpp"

int main(int argc, char** argv) {
  using namespace pitchside;
  CLI::App app{"Commentary speech corpus builder and synthesis gateway", "pitchside-cli"};
  app.require_subcommand(1);
  cli::GlobalOptions globals;
  app.add_option("--config", globals.config_path, "Pipeline config JSON (default: $FOOCTTS_CONFIG)");
  app.add_option("--jobs,-j", globals.jobs, "Worker threads for per-recording work")
      ->check(CLI::PositiveNumber);

  cli::register_vad(app, globals);
  cli::register_align(app, globals);
  cli::register_text(app, globals);
  cli::register_build(app, globals);
  cli::register_validate(app, globals);
  cli::register_serve(app, globals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "pitchside-cli: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "pitchside-cli: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
