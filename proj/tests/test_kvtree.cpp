#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/kvtree.hpp"

using namespace ik;

TEST_CASE("emit and parse round-trip") {
  KvNode root;
  root.add("suite", "demo");
  KvNode& cfg = root.add_child("config");
  cfg.add("eta", format_complex(Cplx{0.3, 0.05}));
  KvNode& th = cfg.add_child("theta");
  th.add("item", format_complex(Cplx{0.167, 0.021}));
  th.add("item", format_complex(Cplx{0.297, 0.042}));
  root.add("pass", "true");

  const std::string text = emit_tree(root);
  const KvNode back = parse_tree(text);
  CHECK(emit_tree(back) == text);
  REQUIRE(back.find("config") != nullptr);
  CHECK(back.find("config")->find("theta")->all("item").size() == 2);
  CHECK(parse_complex(back.find("config")->find("eta")->value) ==
        Cplx{0.3, 0.05});
}

TEST_CASE("seventeen significant digits survive the text form") {
  const double x = 0.1234567890123456789;
  CHECK(parse_real(format_real(x)) == x);
  const Cplx z{-1.0 / 3.0, 2.0 / 7.0};
  CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("comments, blanks and bare reals are accepted") {
  const KvNode t = parse_tree("# header\n\nkey: 5\n\n# tail\n");
  CHECK(parse_int(t.find("key")->value) == 5);
  CHECK(parse_complex("0.25") == Cplx{0.25, 0.0});
}

TEST_CASE("malformed input is rejected with ConfigParse") {
  CHECK_THROWS_AS(parse_tree("no colon here\n"), ConfigParse);
  CHECK_THROWS_AS(parse_tree(" odd: indent\n"), ConfigParse);
  CHECK_THROWS_AS(parse_tree("a: 1\n    jump: 2\n"), ConfigParse);
  CHECK_THROWS_AS(parse_tree("\tkey: 1\n"), ConfigParse);
  CHECK_THROWS_AS(parse_real("abc"), ConfigParse);
  CHECK_THROWS_AS(parse_int("1.5"), ConfigParse);
  CHECK_THROWS_AS(parse_complex("[1]"), ConfigParse);
}
