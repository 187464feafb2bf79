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
#include "pitchside/error.hpp"
#include "pitchside/text/script.hpp"
#include "pitchside/text/transliterate.hpp"
#include "pitchside/text/vowelizer.hpp"

namespace pitchside::cli {
namespace {

struct TextArgs {
  std::string input;
  std::string output;
  bool transliterate = false;
  bool vowelize = false;
  std::string endpoint;
  std::string table;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    begin = end + 1;
  }
  return lines;
}

void run(const TextArgs& args, const GlobalOptions& globals) {
  const PipelineConfig config = load_pipeline_config(globals);
  std::vector<std::string> lines = split_lines(read_file(args.input));

  std::unique_ptr<text::TranslitTable> custom;
  if (!args.table.empty()) custom = std::make_unique<text::TranslitTable>(text::TranslitTable::load(args.table));
  const text::TranslitTable& table = custom ? *custom : text::TranslitTable::bundled();

  std::unique_ptr<text::Vowelizer> vowelizer;
  if (args.vowelize) {
    text::VowelizerConfig vc = config.vowelizer;
    if (!args.endpoint.empty()) {
      vc.mode = text::VowelizerMode::kRemote;
      vc.endpoint = args.endpoint;
    }
    vc.validate();
    vowelizer = std::make_unique<text::Vowelizer>(vc);
  }

  parallel_for(lines.size(), globals.jobs, [&](std::size_t i) {
    std::string line = text::normalize(lines[i]);
    if (args.transliterate) {
      text::TranslitResult r = text::transliterate_text(line, table);
      for (const auto& w : r.warnings)
        std::cerr << args.input << ":" << i + 1 << ": " << w.message << "\n";
      line = text::normalize(r.arabic);
    }
    if (vowelizer && !line.empty()) line = vowelizer->vowelize(line);
    lines[i] = std::move(line);
  });

  std::string out;
  for (const auto& line : lines) out += line + "\n";
  write_file(args.output, out);
}

}  // namespace

void register_text(CLI::App& app, const GlobalOptions& globals) {
  auto args = std::make_shared<TextArgs>();
  CLI::App* cmd = app.add_subcommand("text", "Normalize, transliterate and vowelize transcript lines");
  cmd->add_option("input", args->input, "Input text, one utterance per line")->required();
  cmd->add_option("output", args->output, "Output text")->required();
  cmd->add_flag("--transliterate", args->transliterate, "Map Latin-script tokens to Arabic script");
  cmd->add_flag("--vowelize", args->vowelize, "Add diacritics through the configured vowelizer");
  cmd->add_option("--vowelizer-endpoint", args->endpoint, "Vowelizer URL; implies remote mode");
  cmd->add_option("--translit-table", args->table, "Replacement transliteration TSV");
  cmd->callback([args, &globals] { run(*args, globals); });
}

}  // namespace pitchside::cli
