#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcwf {

enum class ErrorCode {
    unknown_node,
    invalid_net,
    not_enabled,
    token_overflow,
    not_free_choice,
    invalid_allocation,
    cluster_without_transition,
    cluster_without_place,
    not_strongly_connected,
    degenerate_net,
    enumeration_overflow,
    isolated_place_present,
    incomplete_graph,
    parse_error,
    invalid_argument,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Raised by fire_sequence; index is the 0-based position of the first step
// that was not enabled.
class NotEnabledError : public Error {
  public:
    NotEnabledError(std::size_t index, std::string transition)
        : Error(ErrorCode::not_enabled,
                "transition '" + transition + "' is not enabled at step " + std::to_string(index)),
          index_(index), transition_(std::move(transition)) {}

    std::size_t index() const { return index_; }
    const std::string &transition() const { return transition_; }

  private:
    std::size_t index_;
    std::string transition_;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string &message)
        : Error(ErrorCode::parse_error,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &detail() const { return detail_; }

  private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

} // namespace fcwf
