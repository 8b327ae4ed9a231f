// Copyright 2026 The ringcluster Authors
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

namespace ringcluster {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain (negative rate, r >= 1, ...).
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// A mode transform is not unitary.
class InvalidTransform : public Error {
   public:
    InvalidTransform(const std::string &what, double deviation) : Error(what), deviation_(deviation) {
    }
    double deviation() const noexcept {
        return deviation_;
    }

   private:
    double deviation_;
};

/// Physics failures are distinguished from input errors so the CLI can map
/// them to their own exit status.
class PhysicsError : public Error {
   public:
    using Error::Error;
};

/// The drift matrix has an eigenvalue with non-negative real part.
class NoSteadyState : public PhysicsError {
   public:
    NoSteadyState(const std::string &what, double re, double im) : PhysicsError(what), re_(re), im_(im) {
    }
    double offending_real() const noexcept {
        return re_;
    }
    double offending_imag() const noexcept {
        return im_;
    }

   private:
    double re_;
    double im_;
};

/// A covariance or density matrix violates a physicality constraint.
class Unphysical : public PhysicsError {
   public:
    using PhysicsError::PhysicsError;
};

/// Population at the Fock cutoff exceeded the leakage guard.
class CutoffTooSmall : public PhysicsError {
   public:
    CutoffTooSmall(const std::string &what, double leakage) : PhysicsError(what), leakage_(leakage) {
    }
    double leakage() const noexcept {
        return leakage_;
    }

   private:
    double leakage_;
};

/// A run configuration failed validation.
class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace ringcluster
