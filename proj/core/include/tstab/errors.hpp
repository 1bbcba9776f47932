#pragma once

#include <stdexcept>
#include <string>

namespace tstab {

enum class ErrorKind {
  Parse,
  UnboundedPolytope,
  DegeneratePolytope,
  InvalidFan,
  NonpositiveDenominator,
  NotInFan,
  InvalidVariety,
  NotBig,
  NotAmple,
  SlopeUndefined,
  HypothesisViolated,
  EpsilonTooLarge,
  InvalidGrid,
  InvalidTwist,
  NotAdmissible,
  ZeroDensity,
};

const char* to_string(ErrorKind kind) noexcept;

// Base of every error raised by the library. The kind lets front ends map
// failures onto exit codes without catching each type separately.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using ParseError = KindedError<ErrorKind::Parse>;
using UnboundedPolytope = KindedError<ErrorKind::UnboundedPolytope>;
using DegeneratePolytope = KindedError<ErrorKind::DegeneratePolytope>;
using InvalidFan = KindedError<ErrorKind::InvalidFan>;
using NonpositiveDenominator = KindedError<ErrorKind::NonpositiveDenominator>;
using NotInFan = KindedError<ErrorKind::NotInFan>;
using InvalidVariety = KindedError<ErrorKind::InvalidVariety>;
using NotBig = KindedError<ErrorKind::NotBig>;
using NotAmple = KindedError<ErrorKind::NotAmple>;
using SlopeUndefined = KindedError<ErrorKind::SlopeUndefined>;
using HypothesisViolated = KindedError<ErrorKind::HypothesisViolated>;
using EpsilonTooLarge = KindedError<ErrorKind::EpsilonTooLarge>;
using InvalidGrid = KindedError<ErrorKind::InvalidGrid>;
using InvalidTwist = KindedError<ErrorKind::InvalidTwist>;
using NotAdmissible = KindedError<ErrorKind::NotAdmissible>;
using ZeroDensity = KindedError<ErrorKind::ZeroDensity>;

}  // namespace tstab
