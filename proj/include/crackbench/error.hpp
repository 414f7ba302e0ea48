// Copyright (c) 2026 crackbench authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace crackbench {

/// Every failure the library raises, grouped by origin. The CLI maps these
/// onto exit codes: usage/config errors -> 1, data errors -> 2, internal -> 3.
enum class Errc {
  // annotations
  MalformedXml,
  MissingField,
  UnknownLabel,
  DegenerateBox,
  MalformedLine,
  OutOfRange,
  ConfidenceOutOfRange,
  BoxOutOfFrame,
  UnknownClassId,
  // imageops
  CropTallerThanImage,
  // datasetops
  UnmappedClass,
  EmptyManifest,
  OrphanImage,
  UnreadableFile,
  // metrics
  MixedImageIds,
  NoGroundTruth,
  UnknownImageId,
  EmptySplit,
  // report
  ConfigMismatch,
  // synthgen
  InfeasibleSpec,
  // cli / config
  ConfigInvalid,
  UsageError,
  // catch-alls
  InvalidArgument,
  IoError,
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

  int exit_code() const noexcept {
    switch (code_) {
      case Errc::ConfigInvalid:
      case Errc::UsageError:
        return 1;
      case Errc::Internal:
        return 3;
      default:
        return 2;
    }
  }

 private:
  Errc code_;
};

}  // namespace crackbench
