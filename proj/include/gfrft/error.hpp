// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GFRFT_ERROR_HPP
#define GFRFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gfrft {

/// Failure categories. The numeric values are shared with the C API status
/// codes in gfrft.h.
enum class ErrorCode {
  Dimension = 1,
  Parameter = 2,
  Input = 3,
  Parse = 4,
  Reference = 5,
  Precondition = 6,
  Numeric = 7,
  Io = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace gfrft

#endif  // GFRFT_ERROR_HPP
