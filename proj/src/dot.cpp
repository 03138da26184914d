#include <sstream>

#include "cg2a/io.hpp"

namespace cg2a {
namespace {

std::string dotString(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string exportDot(const Vocabulary& vocab, const ConceptualGraph& g) {
  std::ostringstream os;
  os << "graph cg {\n";
  const auto& ct = vocab.concepts();
  for (std::uint32_t i = 0; i < g.concepts().size(); ++i) {
    const auto& c = g.concepts()[i];
    const std::string marker = c.marker ? vocab.marker(*c.marker).name : "*";
    os << "  " << nodeName(ConceptId{i}) << " [shape=box, label=" << dotString(ct.label(c.type) + " : " + marker)
       << "];\n";
  }
  for (std::uint32_t i = 0; i < g.relations().size(); ++i) {
    const auto& r = g.relations()[i];
    os << "  " << nodeName(RelationId{i}) << " [shape=ellipse, label=" << dotString(vocab.label(r.type)) << "];\n";
  }
  for (std::uint32_t i = 0; i < g.relations().size(); ++i) {
    const auto& args = g.relations()[i].arguments;
    for (std::size_t k = 0; k < args.size(); ++k)
      os << "  " << nodeName(RelationId{i}) << " -- " << nodeName(args[k]) << " [label=\"" << k << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cg2a
