// Exception types shared by the gpcr toolkit.

#ifndef GPCR_ERROR_HPP_
#define GPCR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gpcr {

// Malformed input text. line is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
      line_(line) {}
  std::size_t line() const { return line_; }
private:
  std::size_t line_;
};

// A caller broke an operation's precondition (dimension mismatch, invalid topology...).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Data that cannot support the requested computation (single class, empty set).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Model file could not be loaded. field is a JSON-pointer-like path.
class ModelError : public std::runtime_error {
public:
  ModelError(const std::string& field, const std::string& msg)
    : std::runtime_error(field.empty() ? msg : field + ": " + msg), field_(field) {}
  const std::string& field() const { return field_; }
private:
  std::string field_;
};

} // namespace gpcr

#endif
