#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wf2pt {

// Reserved textual token for the silent label. It only appears in
// serialized forms; in memory silence is its own variant.
inline constexpr std::string_view kSilentToken = "tau";

/// Transition label: a visible activity or the silent label.
class Label {
 public:
  static Label silent() { return Label(); }

  static Label activity(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty activity name");
    if (name == kSilentToken)
      throw std::invalid_argument("activity name collides with silent token");
    Label l;
    l.name_ = std::move(name);
    return l;
  }

  bool is_silent() const noexcept { return !name_.has_value(); }
  bool is_activity() const noexcept { return name_.has_value(); }

  // Precondition: is_activity().
  const std::string& name() const { return name_.value(); }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Label& l) {
    return os << (l.is_silent() ? std::string(kSilentToken) : l.name());
  }

 private:
  Label() = default;
  std::optional<std::string> name_;
};

}  // namespace wf2pt
