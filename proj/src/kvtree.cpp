#include "kvtree.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace ik {

KvNode& KvNode::add(const std::string& key, const std::string& scalar) {
  children.push_back({key, KvNode{scalar, {}}});
  return children.back().second;
}

KvNode& KvNode::add_child(const std::string& key) { return add(key, ""); }

const KvNode* KvNode::find(const std::string& key) const {
  for (const auto& [k, n] : children)
    if (k == key) return &n;
  return nullptr;
}

std::vector<const KvNode*> KvNode::all(const std::string& key) const {
  std::vector<const KvNode*> out;
  for (const auto& [k, n] : children)
    if (k == key) out.push_back(&n);
  return out;
}

namespace {

void emit_rec(const KvNode& node, int depth, std::string& out) {
  const std::string pad(2 * depth, ' ');
  for (const auto& [key, child] : node.children) {
    out += pad;
    out += key;
    out += ':';
    if (!child.value.empty()) {
      out += ' ';
      out += child.value;
    }
    out += '\n';
    emit_rec(child, depth + 1, out);
  }
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string emit_tree(const KvNode& root) {
  std::string out;
  emit_rec(root, 0, out);
  return out;
}

KvNode parse_tree(const std::string& text) {
  KvNode root;
  // stack[d] is the open branch node at depth d
  std::vector<KvNode*> stack = {&root};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(line);
    if (body.empty() || body[0] == '#') continue;
    size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (line[indent] == '\t')
      throw ConfigParse("line " + std::to_string(lineno) +
                        ": tabs are not allowed in indentation");
    if (indent % 2 != 0)
      throw ConfigParse("line " + std::to_string(lineno) +
                        ": indentation must be a multiple of two spaces");
    const size_t depth = indent / 2;
    if (depth >= stack.size())
      throw ConfigParse("line " + std::to_string(lineno) +
                        ": indentation jumps more than one level");
    const size_t colon = body.find(':');
    if (colon == std::string::npos || colon == 0)
      throw ConfigParse("line " + std::to_string(lineno) +
                        ": expected 'key: value' or 'key:'");
    const std::string key = strip(body.substr(0, colon));
    const std::string value = strip(body.substr(colon + 1));
    stack.resize(depth + 1);
    KvNode& child = stack.back()->add(key, value);
    stack.push_back(&child);
  }
  return root;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Cplx z) {
  return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

double parse_real(const std::string& s) {
  const std::string t = strip(s);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0')
    throw ConfigParse("not a real number: '" + s + "'");
  return x;
}

long parse_int(const std::string& s) {
  const std::string t = strip(s);
  char* end = nullptr;
  const long x = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0')
    throw ConfigParse("not an integer: '" + s + "'");
  return x;
}

Cplx parse_complex(const std::string& s) {
  const std::string t = strip(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    // bare real is accepted for convenience
    return Cplx{parse_real(t), 0.0};
  }
  const std::string inner = t.substr(1, t.size() - 2);
  const size_t comma = inner.find(',');
  if (comma == std::string::npos)
    throw ConfigParse("complex value must be [re, im]: '" + s + "'");
  return Cplx{parse_real(inner.substr(0, comma)),
              parse_real(inner.substr(comma + 1))};
}

}  // namespace ik
