// Copyright 2026 The qcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCSIM_ERRORS_HPP
#define QCSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcsim {

/// Malformed or truncated compressed-block data.
class CodecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Circuit-text syntax error; carries the 1-based source line.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Request exceeds a configured dense-materialization guard.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numeric degradation, e.g. norm drift beyond the configured tolerance.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qcsim

#endif // QCSIM_ERRORS_HPP
