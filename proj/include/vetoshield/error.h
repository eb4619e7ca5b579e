// Copyright 2026 The Vetoshield Authors
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

#ifndef VETOSHIELD_ERROR_H_
#define VETOSHIELD_ERROR_H_

#include <stdexcept>
#include <string>

namespace vetoshield {

enum class ErrorKind {
  kDimension,
  kInvalidWeights,
  kUndefinedConditional,
  kImpossibleSignal,
  kInfeasibleSplitting,
  kResolutionExhausted,
  kShape,
  kDomain,
  kInfeasible,
  kUnbounded,
  kPrecondition,
  kInstanceTooLarge,
  kParse,
  kInternal,
};

const char* ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type; the kind
// lets callers (and the CLI exit-code mapping) distinguish them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace vetoshield

#endif  // VETOSHIELD_ERROR_H_
