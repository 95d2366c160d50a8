#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wocsim {

// Stable category codes; the C API maps these 1:1 onto wocsim_status.
enum class ErrorCode : int {
    invalid_argument = 1,  // parameter or state invariant violated
    parse = 2,             // config text rejected
    positivity = 3,        // an opinion left the positive domain
    io = 4,                // file system failure
    internal = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

class ParameterError : public Error {
  public:
    explicit ParameterError(const std::string& what)
        : Error(ErrorCode::invalid_argument, what) {}
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorCode::parse, what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// Thrown when an integration step produces a non-positive (or non-finite)
// opinion. step is the 1-based index of the update that failed.
class PositivityError : public Error {
  public:
    PositivityError(std::uint64_t step, std::uint32_t agent, double value)
        : Error(ErrorCode::positivity,
                "opinion " + std::to_string(agent) + " reached " +
                    std::to_string(value) + " at step " +
                    std::to_string(step) +
                    "; opinions must stay positive (log-scale metrics)"),
          step_(step), agent_(agent) {}
    std::uint64_t step() const { return step_; }
    std::uint32_t agent() const { return agent_; }

  private:
    std::uint64_t step_;
    std::uint32_t agent_;
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace wocsim
