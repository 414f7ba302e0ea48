// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#include "crackbench/error.hpp"

namespace crackbench {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::MissingField: return "MissingField";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::DegenerateBox: return "DegenerateBox";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ConfidenceOutOfRange: return "ConfidenceOutOfRange";
    case Errc::BoxOutOfFrame: return "BoxOutOfFrame";
    case Errc::UnknownClassId: return "UnknownClassId";
    case Errc::CropTallerThanImage: return "CropTallerThanImage";
    case Errc::UnmappedClass: return "UnmappedClass";
    case Errc::EmptyManifest: return "EmptyManifest";
    case Errc::OrphanImage: return "OrphanImage";
    case Errc::UnreadableFile: return "UnreadableFile";
    case Errc::MixedImageIds: return "MixedImageIds";
    case Errc::NoGroundTruth: return "NoGroundTruth";
    case Errc::UnknownImageId: return "UnknownImageId";
    case Errc::EmptySplit: return "EmptySplit";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::UsageError: return "UsageError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace crackbench
