// Copyright 2026 The cohdisc Authors
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

namespace cohdisc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something malformed. The CLI maps these to exit code 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotHermitian : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class CompletenessViolation : public InvalidInput {
 public:
  CompletenessViolation(const std::string& what, double deviation)
      : InvalidInput(what), deviation_(deviation) {}
  /// ||sum_k K_k^dagger K_k - I||_inf
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class NotPsd : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotTracePreserving : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotIsometry : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ParamOutOfRange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConstraintViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// The SDP engine did not reach an optimal, certified point. Exit code 3.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

// A proven inequality failed numerically: a solver or construction bug.
// Exit code 4.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cohdisc
