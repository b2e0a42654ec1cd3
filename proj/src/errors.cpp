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

#include "mzw/errors.hpp"

namespace mzw {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::NotReversedMonic: return "NotReversedMonic";
        case ErrorKind::InsufficientData: return "InsufficientData";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::MissingTable: return "MissingTable";
        case ErrorKind::C1ViolationCandidate: return "C1ViolationCandidate";
        case ErrorKind::NotInC1Form: return "NotInC1Form";
        case ErrorKind::SingularPiece: return "SingularPiece";
        case ErrorKind::BadWeilPoly: return "BadWeilPoly";
        case ErrorKind::BadArtinMatrix: return "BadArtinMatrix";
        case ErrorKind::ChiMismatch: return "ChiMismatch";
        case ErrorKind::NotInvertibleClass: return "NotInvertibleClass";
        case ErrorKind::DualUnavailable: return "DualUnavailable";
        case ErrorKind::NotSelfDual: return "NotSelfDual";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NameError: return "NameError";
        case ErrorKind::BackendError: return "BackendError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

} // namespace mzw
