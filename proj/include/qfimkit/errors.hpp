// Copyright 2026 The qfimkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qfimkit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

/// A value contained NaN or Inf after an operation.
class NonFiniteValue : public Error {
   public:
    using Error::Error;
};

/// A block or matrix that has to be inverted is numerically singular.
class SingularMatrix : public Error {
   public:
    using Error::Error;
};

/// The Fisher information is not invertible; the estimation problem is ill-posed for this probe.
class SingularQfim : public SingularMatrix {
   public:
    using SingularMatrix::SingularMatrix;
};

/// An argument is outside the domain of the operation.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Two routes that must agree analytically did not, which points at a transcription bug.
class NumericalConsistencyError : public Error {
   public:
    using Error::Error;
};

/// A truncated Fock expansion lost more norm than the budget allows.
class CutoffTooSmall : public Error {
   public:
    CutoffTooSmall(const std::string &what, double achieved_norm)
        : Error(what), achieved_norm_(achieved_norm) {}
    double achieved_norm() const noexcept { return achieved_norm_; }

   private:
    double achieved_norm_;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace qfimkit
