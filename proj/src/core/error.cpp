/*
Copyright 2026 The cvminer Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "core/error.hpp"

namespace cvminer {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::NoExperienceFound: return "NoExperienceFound";
    case ErrorCode::MalformedDate: return "MalformedDate";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnresolvedRank: return "UnresolvedRank";
    case ErrorCode::ZeroSpan: return "ZeroSpan";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnknownResume: return "UnknownResume";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::BeforeCareerStart: return "BeforeCareerStart";
    case ErrorCode::AllResumesFailed: return "AllResumesFailed";
    case ErrorCode::StaleVersion: return "StaleVersion";
  }
  return "Unknown";
}

}  // namespace cvminer
