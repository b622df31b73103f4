#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "wf2pt/errors.hpp"
#include "wf2pt/label.hpp"
#include "wf2pt/petri_net.hpp"
#include "wf2pt/workflow.hpp"

namespace wf2pt {

// PNML subset: one <net> with <place>, <transition> and <arc> children,
// optionally nested in <page> elements. A transition without a name, or
// named exactly "tau", is silent. Source and sink are inferred.

struct PnmlReadResult {
  WorkflowNet<Label> net;
  std::vector<std::string> warnings;  // ignored elements
};

namespace detail {

using boost::property_tree::ptree;

inline std::string local_name(const std::string& tag) {
  auto colon = tag.rfind(':');
  return colon == std::string::npos ? tag : tag.substr(colon + 1);
}

inline const ptree* child_named(const ptree& node, std::string_view name) {
  for (const auto& [tag, sub] : node)
    if (local_name(tag) == name) return &sub;
  return nullptr;
}

inline std::optional<std::string> text_of(const ptree& node, std::string_view element) {
  const ptree* e = child_named(node, element);
  if (!e) return std::nullopt;
  const ptree* text = child_named(*e, "text");
  if (!text) return std::nullopt;
  return text->get_value<std::string>();
}

inline std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  auto last = s.find_last_not_of(ws);
  s.erase(last == std::string::npos ? 0 : last + 1);
  return s;
}

inline std::string attribute(const ptree& node, const std::string& name) {
  if (auto attrs = node.get_child_optional("<xmlattr>"))
    if (auto v = attrs->get_optional<std::string>(name)) return *v;
  return {};
}

struct PnmlCollector {
  LabeledNet<Label> net;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<std::string> marked;  // places with an initial marking of 1
  std::vector<std::string> warnings;

  void collect(const ptree& container) {
    for (const auto& [tag, node] : container) {
      const std::string name = local_name(tag);
      if (name == "<xmlattr>" || name == "<xmlcomment>" || name == "name") continue;
      if (name == "page") {
        collect(node);
      } else if (name == "place") {
        auto id = attribute(node, "id");
        if (id.empty()) throw MalformedXml("place without id");
        net.add_place(PlaceId(id));
        if (auto m = text_of(node, "initialMarking")) {
          auto v = trim(*m);
          if (v != "0" && !v.empty()) {
            if (v != "1")
              throw UnsupportedFeature("initial marking " + v + " on place " + id);
            marked.push_back(id);
          }
        }
      } else if (name == "transition") {
        auto id = attribute(node, "id");
        if (id.empty()) throw MalformedXml("transition without id");
        auto text = text_of(node, "name");
        Label label = Label::silent();
        if (text) {
          const auto bare = trim(*text);
          if (!bare.empty() && bare != kSilentToken) label = Label::activity(*text);
        }
        net.add_transition(TransitionId(id), std::move(label));
      } else if (name == "arc") {
        if (auto w = text_of(node, "inscription")) {
          if (trim(*w) != "1")
            throw UnsupportedFeature("arc weight " + trim(*w) + " is not supported");
        }
        arcs.emplace_back(attribute(node, "source"), attribute(node, "target"));
      } else {
        warnings.push_back("ignored element <" + name + ">");
      }
    }
  }

  void connect() {
    for (const auto& [src, dst] : arcs) {
      PlaceId ps(src), pd(dst);
      TransitionId ts(src), td(dst);
      if (net.contains(ps) && net.contains(td)) net.add_arc(ps, td);
      else if (net.contains(ts) && net.contains(pd)) net.add_arc(ts, pd);
      else throw MalformedXml("arc " + src + " -> " + dst + " does not join a place and a transition");
    }
  }
};

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Throws MalformedXml, UnsupportedFeature or NotAWorkflowNet.
inline PnmlReadResult read_pnml(std::string_view bytes) {
  using detail::ptree;
  ptree doc;
  try {
    std::istringstream in{std::string(bytes)};
    boost::property_tree::read_xml(in, doc, boost::property_tree::xml_parser::no_comments);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw MalformedXml(std::string("malformed XML: ") + e.what());
  }

  const ptree* root = detail::child_named(doc, "pnml");
  const ptree& scope = root ? *root : doc;
  const ptree* net_node = nullptr;
  for (const auto& [tag, node] : scope) {
    if (detail::local_name(tag) != "net") continue;
    if (net_node) throw UnsupportedFeature("multiple <net> elements");
    net_node = &node;
  }
  if (!net_node) throw MalformedXml("no <net> element");

  detail::PnmlCollector c;
  try {
    c.collect(*net_node);
  } catch (const std::invalid_argument& e) {
    throw MalformedXml(e.what());
  }
  c.connect();
  auto wf = infer_workflow_net(std::move(c.net));
  if (!c.marked.empty() && (c.marked.size() != 1 || c.marked.front() != wf.source().str()))
    throw NotAWorkflowNet({"initial marking does not match the inferred source " +
                           wf.source().str()});
  return PnmlReadResult{std::move(wf), std::move(c.warnings)};
}

inline std::string write_pnml(const WorkflowNet<Label>& wf) {
  using detail::xml_escape;
  const auto& net = wf.net();
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n"
     << "  <net id=\"net\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n"
     << "    <page id=\"page\">\n";
  for (const auto& p : net.places()) {
    os << "      <place id=\"" << xml_escape(p.str()) << "\">";
    if (p == wf.source()) os << "<initialMarking><text>1</text></initialMarking>";
    os << "</place>\n";
  }
  for (const auto& t : net.transitions()) {
    os << "      <transition id=\"" << xml_escape(t.str()) << "\">";
    const auto& l = net.label(t);
    if (l.is_activity()) os << "<name><text>" << xml_escape(l.name()) << "</text></name>";
    os << "</transition>\n";
  }
  std::size_t arc = 0;
  for (const auto& t : net.transitions()) {
    for (const auto& p : net.preset(t))
      os << "      <arc id=\"a" << arc++ << "\" source=\"" << xml_escape(p.str())
         << "\" target=\"" << xml_escape(t.str()) << "\"/>\n";
    for (const auto& p : net.postset(t))
      os << "      <arc id=\"a" << arc++ << "\" source=\"" << xml_escape(t.str())
         << "\" target=\"" << xml_escape(p.str()) << "\"/>\n";
  }
  os << "    </page>\n  </net>\n</pnml>\n";
  return os.str();
}

}  // namespace wf2pt
