#pragma once

#include <stdexcept>
#include <string>

namespace haarcp {

enum class ErrorKind {
  ClosureExceedsCap,
  EmptyGeneratorList,
  IndexOutOfRange,
  NotASubgroup,
  NotNormal,
  NotAGroup,
  SearchCapExceeded,
  CenterMismatch,
  CenterNotContained,
  NotAHomomorphism,
  NotUnimodular,
  RankMismatch,
  IncompleteAction,
  DomainMismatch,
  WitnessInvalid,
  ZeroSamples,
  ParseError,
};

inline const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ClosureExceedsCap: return "ClosureExceedsCap";
  case ErrorKind::EmptyGeneratorList: return "EmptyGeneratorList";
  case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorKind::NotASubgroup: return "NotASubgroup";
  case ErrorKind::NotNormal: return "NotNormal";
  case ErrorKind::NotAGroup: return "NotAGroup";
  case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
  case ErrorKind::CenterMismatch: return "CenterMismatch";
  case ErrorKind::CenterNotContained: return "CenterNotContained";
  case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
  case ErrorKind::NotUnimodular: return "NotUnimodular";
  case ErrorKind::RankMismatch: return "RankMismatch";
  case ErrorKind::IncompleteAction: return "IncompleteAction";
  case ErrorKind::DomainMismatch: return "DomainMismatch";
  case ErrorKind::WitnessInvalid: return "WitnessInvalid";
  case ErrorKind::ZeroSamples: return "ZeroSamples";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Parse failures remember the offending line (1-based; 0 when unknown).
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error(ErrorKind::ParseError,
              (line ? "line " + std::to_string(line) + ": " : std::string()) +
                  what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace haarcp
