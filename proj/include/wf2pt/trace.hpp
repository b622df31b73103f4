#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace wf2pt {

using Trace = std::vector<std::string>;
using TraceSet = std::set<Trace>;

inline constexpr std::size_t kDefaultTraceCap = 200'000;

// Angle-bracket form used in reports: <a,b,c>, <> for the empty trace.
inline std::string format_trace(const Trace& trace) {
  std::string out = "<";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ',';
    out += trace[i];
  }
  return out + ">";
}

}  // namespace wf2pt
