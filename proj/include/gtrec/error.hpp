#pragma once

#include <stdexcept>
#include <string>

namespace gtrec {

enum class ErrorCode {
  kDomain,        // argument outside an operation's domain
  kParse,         // malformed input text
  kPrecondition,  // a documented precondition does not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void DomainError(const std::string& what) {
  throw Error(ErrorCode::kDomain, what);
}

[[noreturn]] inline void PreconditionError(const std::string& what) {
  throw Error(ErrorCode::kPrecondition, what);
}

}  // namespace gtrec
