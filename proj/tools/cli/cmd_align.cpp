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
#include <optional>
#include <set>
#include <sstream>

#include "common.hpp"
#include "pitchside/align/ctc_align.hpp"
#include "pitchside/align/posteriors.hpp"
#include "pitchside/corpus/record.hpp"
#include "pitchside/error.hpp"
#include "pitchside/text/script.hpp"

namespace pitchside::cli {
namespace {

namespace fs = std::filesystem;

struct AlignArgs {
  std::string posteriors;
  std::string transcript;
  std::string output;
  std::string vocab;
  std::string rec_id;
  std::string stay_mode;
  std::optional<double> min_score;
  std::string records;
  std::string batch;
  std::string out_dir;
};

struct Job {
  fs::path posteriors;
  fs::path transcript;
  fs::path output;
  std::string rec_id;
};

struct JobResult {
  std::vector<corpus::UtteranceRecord> records;
  std::size_t dropped = 0;
};

JobResult run_one(const Job& job, const std::optional<fs::path>& vocab, const align::AlignOptions& options,
                  std::optional<double> min_score) {
  const align::LogPosteriorMatrix matrix = align::load_posteriors(job.posteriors, vocab);
  const std::vector<std::string> lines = read_list(job.transcript);
  if (lines.empty()) throw Error(ErrorCode::kInvalidArgument, "transcript '" + job.transcript.string() + "' is empty");
  std::vector<std::vector<std::size_t>> utterances;
  for (const auto& line : lines) utterances.push_back(matrix.vocabulary.encode(line));

  const align::Alignment result = align::align(matrix, utterances, options);
  JobResult out;
  std::vector<align::AlignedUtterance> kept;
  for (const auto& u : result.utterances) {
    if (min_score && u.score < *min_score) {
      std::cerr << "align: dropping " << align::utterance_id(job.rec_id, u.utterance_index) << " (score "
                << u.score << ")\n";
      ++out.dropped;
      continue;
    }
    kept.push_back(u);
  }
  write_file(job.output, kept.empty() ? std::string() : align::emit_segments(kept, job.rec_id));
  for (const auto& u : kept) {
    corpus::UtteranceRecord r;
    r.utt_id = align::utterance_id(job.rec_id, u.utterance_index);
    r.recording_id = job.rec_id;
    r.start_s = u.start_s;
    r.end_s = u.end_s;
    r.text_vowelized = lines[u.utterance_index];
    r.text_raw = text::strip_diacritics(r.text_vowelized);
    r.align_score = u.score;
    out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<Job> batch_jobs(const AlignArgs& args) {
  std::vector<Job> jobs;
  std::set<std::string> ids;
  for (const auto& line : read_list(args.batch)) {
    std::istringstream in(line);
    std::string ctcp, transcript, extra;
    if (!(in >> ctcp >> transcript) || (in >> extra))
      throw Error(ErrorCode::kMalformedInput, "batch line '" + line + "' is not 'POSTERIORS TRANSCRIPT'");
    Job job{ctcp, transcript, {}, fs::path(ctcp).stem().string()};
    if (!ids.insert(job.rec_id).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate recording id '" + job.rec_id + "'");
    job.output = fs::path(args.out_dir) / (job.rec_id + ".segments");
    jobs.push_back(std::move(job));
  }
  return jobs;
}

void run(const AlignArgs& args, const GlobalOptions& globals) {
  const PipelineConfig config = load_pipeline_config(globals);
  align::AlignOptions options;
  options.stay = args.stay_mode.empty() ? config.align.stay : align::parse_stay_mode(args.stay_mode);
  options.score_window = config.align.window;
  const std::optional<double> min_score = args.min_score ? args.min_score : config.align.min_score;
  std::optional<fs::path> vocab;
  if (!args.vocab.empty()) vocab = args.vocab;

  std::vector<Job> jobs;
  if (args.batch.empty()) {
    if (args.posteriors.empty() || args.transcript.empty() || args.output.empty())
      throw Error(ErrorCode::kInvalidArgument,
                  "align needs POSTERIORS TRANSCRIPT OUT.segments or --batch LIST --out-dir DIR");
    jobs.push_back({args.posteriors, args.transcript, args.output,
                    args.rec_id.empty() ? fs::path(args.posteriors).stem().string() : args.rec_id});
  } else {
    if (args.out_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "--batch requires --out-dir");
    if (!args.posteriors.empty() || !args.rec_id.empty() || !args.vocab.empty())
      throw Error(ErrorCode::kInvalidArgument, "--batch does not take positional files, --rec-id or --vocab");
    jobs = batch_jobs(args);
  }

  std::vector<JobResult> results(jobs.size());
  parallel_for(jobs.size(), globals.jobs,
               [&](std::size_t i) { results[i] = run_one(jobs[i], vocab, options, min_score); });

  std::vector<corpus::UtteranceRecord> records;
  std::size_t dropped = 0;
  for (auto& r : results) {
    dropped += r.dropped;
    records.insert(records.end(), r.records.begin(), r.records.end());
  }
  if (!args.records.empty()) write_file(args.records, corpus::format_records_tsv(records));
  std::cerr << "align: " << records.size() << " utterances kept, " << dropped << " dropped\n";
}

}  // namespace

void register_align(CLI::App& app, const GlobalOptions& globals) {
  auto args = std::make_shared<AlignArgs>();
  CLI::App* cmd = app.add_subcommand("align", "Force-align transcript lines against CTC posteriors");
  cmd->add_option("posteriors", args->posteriors, "Posterior matrix (.ctcp)");
  cmd->add_option("transcript", args->transcript, "One utterance per line");
  cmd->add_option("output", args->output, "Output segments file");
  cmd->add_option("--vocab", args->vocab, "Vocabulary JSON (default: <posteriors>.vocab.json)");
  cmd->add_option("--rec-id", args->rec_id, "Recording id (default: posteriors file stem)");
  cmd->add_option("--stay-mode", args->stay_mode, "blank_only or blank_or_repeat");
  cmd->add_option("--min-score", args->min_score, "Drop utterances scoring below this");
  cmd->add_option("--records", args->records, "Also write a records TSV for the build step");
  cmd->add_option("--batch", args->batch, "File of 'POSTERIORS TRANSCRIPT' lines");
  cmd->add_option("--out-dir", args->out_dir, "Directory for <rec>.segments in batch mode");
  cmd->callback([args, &globals] { run(*args, globals); });
}

}  // namespace pitchside::cli
