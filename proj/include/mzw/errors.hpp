/*
   Copyright 2026 The mzw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MZW_ERRORS_HPP
#define MZW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mzw {

enum class ErrorKind {
    NotInvertible,    // series constant term is not a unit
    NotReversedMonic, // polynomial does not have constant term 1
    InsufficientData, // fewer power sums than an operation requires
    DivisionByZero,
    MissingTable,   // symbolic atom lacks a sym/ext table entry
    C1ViolationCandidate, // a determinant that is not a unit monomial
    NotInC1Form,    // unit monomial not of the form L^r * (Artin part)
    SingularPiece,  // non-invertible graded matrix
    BadWeilPoly,
    BadArtinMatrix,
    ChiMismatch,    // morphism between objects of different chi^+/chi^-
    NotInvertibleClass,
    DualUnavailable,
    NotSelfDual,
    ParseError,
    NameError,
    BackendError,
    IoError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace mzw

#endif
