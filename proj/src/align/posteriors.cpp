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

#include "pitchside/align/posteriors.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "pitchside/error.hpp"

namespace pitchside::align {
namespace {

constexpr std::size_t kHeaderBytes = 16;

std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

}  // namespace

void LogPosteriorMatrix::validate() const {
  if (frames < 1 || classes < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need T >= 1 and C >= 2, got T=" + std::to_string(frames) + " C=" + std::to_string(classes));
  }
  if (values.size() != frames * classes) {
    throw Error(ErrorCode::kDimensionMismatch, std::to_string(values.size()) + " values for " +
                                                   std::to_string(frames) + "x" + std::to_string(classes));
  }
  if (vocabulary.size() != classes) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary has " + std::to_string(vocabulary.size()) +
                                                   " tokens, matrix has " + std::to_string(classes) + " classes");
  }
  if (!(frame_duration_s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "frame duration must be positive");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i]) || values[i] > kLogProbSlack) {
      throw Error(ErrorCode::kNotLogProb, "entry (t=" + std::to_string(i / classes) + ", c=" +
                                              std::to_string(i % classes) + ") = " + std::to_string(values[i]));
    }
  }
}

LogPosteriorMatrix decode_ctcp(std::span<const std::uint8_t> bytes, Vocabulary vocabulary) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "CTCP", 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "missing CTCP magic");
  }
  if (bytes.size() < kHeaderBytes) throw Error(ErrorCode::kDimensionMismatch, "header truncated");
  LogPosteriorMatrix m;
  m.frames = le32(bytes.data() + 4);
  m.classes = le32(bytes.data() + 8);
  m.frame_duration_s = le32(bytes.data() + 12) * 1e-6;
  const std::size_t expected = m.frames * m.classes;
  if (bytes.size() - kHeaderBytes != expected * 4) {
    throw Error(ErrorCode::kDimensionMismatch, "payload has " + std::to_string(bytes.size() - kHeaderBytes) +
                                                   " bytes, header implies " + std::to_string(expected * 4));
  }
  m.values.resize(expected);
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  for (std::size_t i = 0; i < expected; ++i, p += 4) {
    const std::uint32_t bits = le32(p);
    float v;
    std::memcpy(&v, &bits, sizeof v);
    m.values[i] = v;
  }
  m.vocabulary = std::move(vocabulary);
  m.validate();
  return m;
}

std::vector<std::uint8_t> encode_ctcp(const LogPosteriorMatrix& matrix) {
  std::vector<std::uint8_t> out{'C', 'T', 'C', 'P'};
  out.reserve(kHeaderBytes + matrix.values.size() * 4);
  put32(out, static_cast<std::uint32_t>(matrix.frames));
  put32(out, static_cast<std::uint32_t>(matrix.classes));
  put32(out, static_cast<std::uint32_t>(std::llround(matrix.frame_duration_s * 1e6)));
  for (double v : matrix.values) {
    const auto f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    put32(out, bits);
  }
  return out;
}

std::filesystem::path default_vocab_path(const std::filesystem::path& ctcp_path) {
  auto p = ctcp_path;
  p.replace_extension(".vocab.json");
  return p;
}

LogPosteriorMatrix load_posteriors(const std::filesystem::path& path,
                                   const std::optional<std::filesystem::path>& vocab_path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "CTCP", 4) != 0) {
    throw Error(ErrorCode::kBadMagic, path.string() + " is not a CTCP file");
  }
  return decode_ctcp(bytes, Vocabulary::load(vocab_path.value_or(default_vocab_path(path))));
}

void save_posteriors(const LogPosteriorMatrix& matrix, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& vocab_path) {
  const auto bytes = encode_ctcp(matrix);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  std::ofstream vocab(vocab_path.value_or(default_vocab_path(path)), std::ios::trunc);
  if (!vocab) throw Error(ErrorCode::kIoError, "cannot create vocabulary sidecar for " + path.string());
  vocab << matrix.vocabulary.to_json() << '\n';
  if (!out || !vocab) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

}  // namespace pitchside::align
