#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "oodn/model.hpp"

namespace oodn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidName : public Error {
 public:
  using Error::Error;
};

class TooFewInputs : public Error {
 public:
  using Error::Error;
};

class DuplicateTypes : public Error {
 public:
  using Error::Error;
};

/// An exploiter's existence condition failed. For intersection, methods that
/// were common to every type (but could not carry the result alone) are
/// reported in `common_methods`.
class DoesNotExist : public Error {
 public:
  explicit DoesNotExist(const std::string& what, Signature common_methods = {})
      : Error(what), common_methods_(std::move(common_methods)) {}

  const Signature& common_methods() const { return common_methods_; }

 private:
  Signature common_methods_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON text. `line` and `column` are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON that does not follow the class-file schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace oodn
