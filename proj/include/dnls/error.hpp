#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

enum class ErrorKind {
  NoConvergence,
  SingularJacobian,
  StepFloorReached,
  DoesNotFit,
  StructureMismatch,
  AmbiguousStructure,
  NoQRConvergence,
  ClassificationAmbiguous,
  MelnikovNonpositive,
  DegenerateAbscissa,
  StudyFailed,
  Io,
};

const char* to_string(ErrorKind kind);

// Base for every failure the library reports. The kind drives CLI exit codes
// and the error tags written into study/sweep rows.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::StepFloorReached: return "StepFloorReached";
    case ErrorKind::DoesNotFit: return "DoesNotFit";
    case ErrorKind::StructureMismatch: return "StructureMismatch";
    case ErrorKind::AmbiguousStructure: return "AmbiguousStructure";
    case ErrorKind::NoQRConvergence: return "NoQRConvergence";
    case ErrorKind::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorKind::MelnikovNonpositive: return "MelnikovNonpositive";
    case ErrorKind::DegenerateAbscissa: return "DegenerateAbscissa";
    case ErrorKind::StudyFailed: return "StudyFailed";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace dnls
