#pragma once

#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace ik {

// Line-oriented key:value tree used for both run configs and reports.
// A node is either a scalar (has a value string) or a branch (has children);
// children keep declaration order and keys may repeat (lists are repeated
// "item:" keys). Text form: two-space indentation, LF endings, '#' comments.
struct KvNode {
  std::string value;
  std::vector<std::pair<std::string, KvNode>> children;

  bool is_scalar() const { return children.empty(); }

  KvNode& add(const std::string& key, const std::string& scalar = "");
  KvNode& add_child(const std::string& key);
  // First child with the key, or null.
  const KvNode* find(const std::string& key) const;
  std::vector<const KvNode*> all(const std::string& key) const;
};

std::string emit_tree(const KvNode& root);
// Throws ConfigParse on bad indentation or malformed lines.
KvNode parse_tree(const std::string& text);

// Scalar codecs. Reals carry 17 significant digits; complex values are
// "[re, im]". Parsers throw ConfigParse with the offending text.
std::string format_real(double x);
std::string format_complex(Cplx z);
double parse_real(const std::string& s);
long parse_int(const std::string& s);
Cplx parse_complex(const std::string& s);

}  // namespace ik
