#include "symchaos/dot.hpp"

#include <sstream>

namespace symchaos {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const Sft& X, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << quoted(graph_name) << " {\n";
    os << "  rankdir=LR;\n  node [shape=circle];\n";
    for (Vertex u = 0; u < X.vertex_count(); ++u)
        os << "  " << quoted(X.vertex_names()[u]) << ";\n";
    for (Vertex u = 0; u < X.vertex_count(); ++u)
        for (const Edge& e : X.adjacency()[u])
            os << "  " << quoted(X.vertex_names()[u]) << " -> " << quoted(X.vertex_names()[e.to])
               << " [label=" << quoted(X.alphabet()[e.sym]) << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace symchaos
