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

#include "pitchside/audio/audio_buffer.hpp"

namespace pitchside::audio {

/// Linear-interpolation resampling. Output length is
/// round(len * target / source); no anti-alias filtering is applied, so
/// content above the new Nyquist frequency folds back.
AudioBuffer resample(const AudioBuffer& buffer, int target_rate);

}  // namespace pitchside::audio
