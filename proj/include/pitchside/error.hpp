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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pitchside {

enum class ErrorCode {
  // audio
  kIoError,
  kUnsupportedFormat,
  kCorruptHeader,
  kBufferTooShort,
  kSampleRateMismatch,
  kSilentNoiseSource,
  kInvalidArgument,
  // vad
  kEmptyTrack,
  kSegmentOutOfRange,
  // align
  kBadMagic,
  kDimensionMismatch,
  kNotLogProb,
  kInfeasibleAlignment,
  kTokenOutOfVocab,
  // text
  kInvalidUtf8,
  kNotLatinToken,
  kVowelizerTimeout,
  kVowelizerHttpError,
  kVowelizerUnavailable,
  kVowelizerMismatch,
  // corpus
  kNoVoicedFrames,
  kUnknownLabel,
  kDuplicateUttId,
  kNotEnoughRecords,
  kUnresolvedAudio,
  kUnlabeledRecord,
  kMalformedInput,
  // serve / config
  kInvalidRequest,
  kBackendUnavailable,
  kBadBackendAudio,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

/// True for codes caused by bad caller input (CLI exit code 2) rather than a
/// failure while running (exit code 3).
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pitchside
