// Copyright 2026 The CoPu Authors
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

namespace copu {

enum class Errc {
  InvalidArgument,
  NonFinite,
  DimensionMismatch,
  NotHermitian,
  NotAState,
  TraceNotPreserved,
  NotDiagonal,
  ConstraintViolation,
  NotCompletelyPositive,
  Undefined,
  Unsupported,
  UnknownFamily,
  Degenerate,
  Parse,
  Io,
};

inline const char* to_string(Errc e) {
  switch (e) {
    case Errc::InvalidArgument: return "invalid argument";
    case Errc::NonFinite: return "non-finite value";
    case Errc::DimensionMismatch: return "dimension mismatch";
    case Errc::NotHermitian: return "not Hermitian";
    case Errc::NotAState: return "not a density matrix";
    case Errc::TraceNotPreserved: return "trace not preserved";
    case Errc::NotDiagonal: return "not in canonical diagonal form";
    case Errc::ConstraintViolation: return "parameter constraint violated";
    case Errc::NotCompletelyPositive: return "not completely positive";
    case Errc::Undefined: return "undefined";
    case Errc::Unsupported: return "unsupported";
    case Errc::UnknownFamily: return "unknown family";
    case Errc::Degenerate: return "degenerate input";
    case Errc::Parse: return "parse error";
    case Errc::Io: return "i/o error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace copu
