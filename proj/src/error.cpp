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

#include "pitchside/error.hpp"

namespace pitchside {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kBufferTooShort: return "BufferTooShort";
    case ErrorCode::kSampleRateMismatch: return "SampleRateMismatch";
    case ErrorCode::kSilentNoiseSource: return "SilentNoiseSource";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyTrack: return "EmptyTrack";
    case ErrorCode::kSegmentOutOfRange: return "SegmentOutOfRange";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotLogProb: return "NotLogProb";
    case ErrorCode::kInfeasibleAlignment: return "InfeasibleAlignment";
    case ErrorCode::kTokenOutOfVocab: return "TokenOutOfVocab";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kNotLatinToken: return "NotLatinToken";
    case ErrorCode::kVowelizerTimeout: return "VowelizerTimeout";
    case ErrorCode::kVowelizerHttpError: return "VowelizerHttpError";
    case ErrorCode::kVowelizerUnavailable: return "VowelizerUnavailable";
    case ErrorCode::kVowelizerMismatch: return "VowelizerMismatch";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kDuplicateUttId: return "DuplicateUttId";
    case ErrorCode::kNotEnoughRecords: return "NotEnoughRecords";
    case ErrorCode::kUnresolvedAudio: return "UnresolvedAudio";
    case ErrorCode::kUnlabeledRecord: return "UnlabeledRecord";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kInvalidRequest: return "InvalidRequest";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kBadBackendAudio: return "BadBackendAudio";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBufferTooShort:
    case ErrorCode::kSampleRateMismatch:
    case ErrorCode::kSilentNoiseSource:
    case ErrorCode::kVowelizerTimeout:
    case ErrorCode::kVowelizerHttpError:
    case ErrorCode::kVowelizerUnavailable:
    case ErrorCode::kVowelizerMismatch:
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kBadBackendAudio:
      return false;
    default:
      return true;
  }
}

}  // namespace pitchside
