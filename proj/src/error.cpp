// Copyright 2026 The nfst-overlay Authors
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

#include "nfst/error.hpp"

namespace nfst {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kUsage: return "Usage";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInvalidFst: return "InvalidFst";
    case ErrorCode::kNotLengthPreserving: return "NotLengthPreserving";
    case ErrorCode::kEpsilonPresent: return "EpsilonPresent";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kAdjacencyUnsatisfiable: return "AdjacencyUnsatisfiable";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kTruncatedInput: return "TruncatedInput";
    case ErrorCode::kMalformedImage: return "MalformedImage";
    case ErrorCode::kActivationOverflow: return "ActivationOverflow";
    case ErrorCode::kFifoOverflow: return "FifoOverflow";
    case ErrorCode::kNoAcceptingPath: return "NoAcceptingPath";
    case ErrorCode::kUnusedTramEntry: return "UnusedTramEntry";
    case ErrorCode::kUnsupportedEpsilonOutput: return "UnsupportedEpsilonOutput";
    case ErrorCode::kVerifyFailed: return "VerifyFailed";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace nfst
