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
#include <memory>

#include "common.hpp"
#include "pitchside/corpus/manifest.hpp"
#include "pitchside/error.hpp"

namespace pitchside::cli {

void register_validate(CLI::App& app, const GlobalOptions&) {
  auto dir = std::make_shared<std::string>();
  CLI::App* cmd = app.add_subcommand("validate", "Check a manifest directory; report as JSON on stdout");
  cmd->add_option("dir", *dir, "Manifest directory")->required();
  cmd->callback([dir] {
    const corpus::ValidationReport report = corpus::validate_manifest(*dir);
    std::cout << report.to_json() << "\n";
    if (!report.ok())
      throw Error(ErrorCode::kMalformedInput,
                  *dir + ": " + std::to_string(report.issues.size()) + " manifest issue(s)");
  });
}

}  // namespace pitchside::cli
