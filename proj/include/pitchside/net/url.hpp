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

#include <string>
#include <string_view>

namespace pitchside::net {

/// "http://host:port/path?q" -> origin "http://host:port", target "/path?q".
struct HttpUrl {
  std::string origin;
  std::string target;
};

/// Throws kConfigError unless the URL is plain http:// with a host.
HttpUrl parse_http_url(std::string_view url);

/// Percent-encodes everything outside unreserved ASCII, so UTF-8 text can
/// travel in a header value.
std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

}  // namespace pitchside::net
