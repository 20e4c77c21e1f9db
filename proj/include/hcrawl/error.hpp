#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcrawl {

/// Argument outside an operation's domain (empty keyword, empty query, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unknown node, query or document id.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Input bytes that are not valid in the declared encoding.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Malformed structured file (session, wrapper config, graph file).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Session file written by an incompatible schema version.
class MigrationError : public std::runtime_error {
 public:
  MigrationError(int found, int supported)
      : std::runtime_error("session schema version " + std::to_string(found) +
                           " cannot be migrated to version " +
                           std::to_string(supported)),
        found_(found),
        supported_(supported) {}
  int found() const noexcept { return found_; }
  int supported() const noexcept { return supported_; }

 private:
  int found_;
  int supported_;
};

}  // namespace hcrawl
