#ifndef MVRR_ERRORS_HPP
#define MVRR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvrr {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An explicit relation whose transitive closure is cyclic. `cycle` lists the
/// values on one cycle, first element repeated at the end.
class CycleError : public Error {
public:
  CycleError(std::string message, std::vector<std::string> cycle)
      : Error(std::move(message)), cycle_(std::move(cycle)) {}

  const std::vector<std::string> &cycle() const noexcept { return cycle_; }

private:
  std::vector<std::string> cycle_;
};

/// Malformed event graph: duplicate ids, dangling hb endpoints, or cyclic hb.
class EventGraphError : public Error {
public:
  using Error::Error;
};

/// An observed set that omits a happens-before predecessor of one of its
/// members.
class CausalClosureError : public Error {
public:
  CausalClosureError(std::string message, std::string missing, std::string member)
      : Error(std::move(message)), missing_(std::move(missing)),
        member_(std::move(member)) {}

  const std::string &missing() const noexcept { return missing_; }
  const std::string &member() const noexcept { return member_; }

private:
  std::string missing_;
  std::string member_;
};

/// Merge of two register states carrying different value orders.
class PolicyMismatchError : public Error {
public:
  using Error::Error;
};

/// Bytes that cannot be decoded into a register state.
class DecodeError : public Error {
public:
  DecodeError(std::string message, std::size_t offset)
      : Error(std::move(message) + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Well-formed header carrying a format version this build cannot read.
class VersionMismatchError : public Error {
public:
  VersionMismatchError(unsigned found, unsigned expected)
      : Error("unsupported state format version " + std::to_string(found) +
              " (expected " + std::to_string(expected) + ")"),
        found_(found) {}

  unsigned found() const noexcept { return found_; }

private:
  unsigned found_;
};

/// Schedule referencing undeclared replicas or otherwise unusable.
class ScheduleError : public Error {
public:
  using Error::Error;
};

/// Scenario or order text that does not parse.
class ParseError : public Error {
public:
  ParseError(std::string message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + std::move(message)),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace mvrr

#endif // MVRR_ERRORS_HPP
