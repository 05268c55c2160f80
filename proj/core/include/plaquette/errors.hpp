// Copyright 2026 The Plaquette Authors
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

#ifndef PLAQUETTE_ERRORS_HPP
#define PLAQUETTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plaquette {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense or statevector operation would exceed its qubit cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: wrong lengths, bad characters, inconsistent sizes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operator expected to be Hermitian is not.
class NonHermitian : public Error {
 public:
  using Error::Error;
};

/// The Hamiltonian has non-commuting terms, so an exact ancilla circuit does
/// not exist and Trotterization would be required.
class NonCommutingTerms : public Error {
 public:
  using Error::Error;
};

/// Requested (gauge group, geometry) pair is not one of the supported models.
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

/// An observable is not diagonal in the measured basis.
class NonDiagonalObservable : public Error {
 public:
  using Error::Error;
};

/// Configuration file problems (missing, malformed, unknown keys, bad values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace plaquette

#endif  // PLAQUETTE_ERRORS_HPP
