/*
   Copyright 2026 The forma authors

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

#ifndef FORMA_ERROR_HPP
#define FORMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace forma {

enum class ErrorKind {
    SpecMismatch,
    DivisionByZero,
    InvalidFieldSpec,
    RingMismatch,
    ZeroPolynomial,
    UnknownVariable,
    DegreeMismatch,
    NotHomogeneous,
    SingularChange,
    ZeroDivisor,
    SyntaxError,
    UnknownSymbol,
    FieldLiteralError,
    WeightedRingUnsupported,
    MalformedDecomposition,
    InfiniteFieldExhaustion,
    UndefinedStrength,
    CampaignRequired,
    ZeroParameter,
    CheckpointCorrupt,
    InvalidInput,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::SpecMismatch: return "SpecMismatch";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::InvalidFieldSpec: return "InvalidFieldSpec";
        case ErrorKind::RingMismatch: return "RingMismatch";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::SingularChange: return "SingularChange";
        case ErrorKind::ZeroDivisor: return "ZeroDivisor";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownSymbol: return "UnknownSymbol";
        case ErrorKind::FieldLiteralError: return "FieldLiteralError";
        case ErrorKind::WeightedRingUnsupported: return "WeightedRingUnsupported";
        case ErrorKind::MalformedDecomposition: return "MalformedDecomposition";
        case ErrorKind::InfiniteFieldExhaustion: return "InfiniteFieldExhaustion";
        case ErrorKind::UndefinedStrength: return "UndefinedStrength";
        case ErrorKind::CampaignRequired: return "CampaignRequired";
        case ErrorKind::ZeroParameter: return "ZeroParameter";
        case ErrorKind::CheckpointCorrupt: return "CheckpointCorrupt";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "UnknownError";
}

/// Library-wide exception; `kind` identifies the failure class, `where`
/// carries an input position for parse errors (-1 otherwise).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, long where = -1)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind),
          where_(where) {}

    ErrorKind kind() const noexcept { return kind_; }
    long position() const noexcept { return where_; }

private:
    ErrorKind kind_;
    long where_;
};

}  // namespace forma

#endif
