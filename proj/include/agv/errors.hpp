#pragma once

#include <stdexcept>
#include <string>

namespace agv {

enum class ErrorKind {
  MissingParameter,
  ParseError,
  EmptyRegion,
  ActionAlphabetClash,
  AlphabetMismatch,
  NotComposedModel,
  HorizonExceedsStrategyTable,
  IllDefinedValuationInRegion,
  UnboundedReward,
  NotGraphPreserving,
  NonPolytopicComponent,
  NotIntervalRPA,
  InfeasibleIntervalSet,
  SideConditionError,
  FormatError,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures keep the byte offset so callers can report line/column.
class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& message, std::size_t position)
      : Error(ErrorKind::ParseError, message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace agv
