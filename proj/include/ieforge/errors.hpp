#pragma once

#include <stdexcept>
#include <string>

namespace ieforge {

/// Base class for every fault raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (pipeline config, manifest,
/// label sets, curated dictionaries).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A raw record could not be mapped onto a unified sample.
class AdapterError : public Error {
 public:
  AdapterError(std::size_t record_index, const std::string& what)
      : Error("record " + std::to_string(record_index) + ": " + what), index_(record_index) {}

  std::size_t record_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Gold and prediction sets could not be aligned by sample id.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A record violates the unified sample interchange format.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// No task-description template for a (task, language) pair.
class TemplateError : public Error {
 public:
  using Error::Error;
};

}  // namespace ieforge
