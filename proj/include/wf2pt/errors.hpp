#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wf2pt {

class UnknownNode : public std::invalid_argument {
 public:
  explicit UnknownNode(const std::string& id)
      : std::invalid_argument("unknown node: " + id) {}
};

class FiringNotEnabled : public std::logic_error {
 public:
  explicit FiringNotEnabled(const std::string& id)
      : std::logic_error("transition not enabled: " + id) {}
};

// Thrown by state-space and language enumerations when a cap is hit.
// `place` names the over-marked place when the token cap was the cause.
class StateSpaceExhausted : public std::runtime_error {
 public:
  enum class Cause { States, Tokens };

  StateSpaceExhausted(Cause cause, std::string place = {})
      : std::runtime_error(cause == Cause::States
                               ? std::string("state cap exceeded")
                               : "token cap exceeded on place " + place),
        cause_(cause),
        place_(std::move(place)) {}

  Cause cause() const noexcept { return cause_; }
  const std::string& place() const noexcept { return place_; }

 private:
  Cause cause_;
  std::string place_;
};

class ResultSetCapExceeded : public std::runtime_error {
 public:
  explicit ResultSetCapExceeded(std::size_t cap)
      : std::runtime_error("trace set cap of " + std::to_string(cap) +
                           " exceeded") {}
};

class NotAWorkflowNet : public std::runtime_error {
 public:
  explicit NotAWorkflowNet(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept {
    return problems_;
  }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "not a workflow net";
    for (const auto& p : problems) out += "; " + p;
    return out;
  }

  std::vector<std::string> problems_;
};

class StaleMatch : public std::logic_error {
 public:
  explicit StaleMatch(const std::string& what)
      : std::logic_error("stale pattern match: " + what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " +
                           std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LoopArityError : public ParseError {
 public:
  LoopArityError(std::size_t arity, std::size_t position)
      : ParseError("loop operator takes exactly 2 children, got " +
                       std::to_string(arity),
                   position) {}
};

class MalformedXml : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wf2pt
