#include <doctest.h>

#include "helpers.hpp"
#include "irfeed/mini_ir.hpp"

using namespace irfeed::mir;

namespace {

// parse_module verifies what it parses; structural errors can surface
// from either stage. This returns whichever diagnostic fired first.
std::optional<std::string> first_diagnostic(const std::string& text) {
  auto r = parse_module(text);
  if (!r.ok()) return r.error.message;
  if (auto d = verify(*r.module)) return d->message;
  return std::nullopt;
}

}  // namespace

TEST_CASE("parse and render round-trip on the diamond program") {
  const std::string text = read_fixture("diamond.mir");
  auto result = parse_module(text);
  REQUIRE(result.ok());
  CHECK(!verify(*result.module).has_value());
  CHECK(result.module->instruction_count() == 7);

  // render is canonical: parsing its own output reproduces it.
  const std::string canonical = render(*result.module);
  auto again = parse_module(canonical);
  REQUIRE(again.ok());
  CHECK(render(*again.module) == canonical);
}

TEST_CASE("interpreter runs the diamond program") {
  auto m = parse_module(read_fixture("diamond.mir"));
  REQUIRE(m.ok());

  // x=4: takes the then-branch, returns 4-3.
  auto r = interpret(*m.module, {4});
  REQUIRE(r.ok);
  CHECK(r.value == 1);

  // x=50: skips then, still returns x-3.
  r = interpret(*m.module, {50});
  REQUIRE(r.ok);
  CHECK(r.value == 47);

  // Missing args default to zero.
  r = interpret(*m.module, {});
  REQUIRE(r.ok);
  CHECK(r.value == -3);
}

TEST_CASE("arithmetic wraps at 32 bits") {
  auto m = parse_module(
      "func f(%x) {\n"
      "entry:\n"
      "  %a = add i32 %x, 1\n"
      "  ret i32 %a\n"
      "}\n");
  REQUIRE(m.ok());
  auto r = interpret(*m.module, {2147483647});
  REQUIRE(r.ok);
  CHECK(r.value == INT32_MIN);

  auto mm = parse_module(
      "func f(%x) {\n"
      "entry:\n"
      "  %a = mul i32 %x, %x\n"
      "  ret i32 %a\n"
      "}\n");
  REQUIRE(mm.ok());
  r = interpret(*mm.module, {65536});
  REQUIRE(r.ok);
  CHECK(r.value == 0);
}

TEST_CASE("parse rejects malformed input with a line diagnostic") {
  auto r = parse_module("func f() {\nentry:\n  %a = bogus i32 1, 2\n  ret i32 %a\n}\n");
  REQUIRE(!r.ok());
  CHECK(r.error.line == 3);
  CHECK(r.error.to_string().rfind("line 3:", 0) == 0);

  CHECK(!parse_module("").ok());
  CHECK(!parse_module("func f() {\n}\n").ok());
}

TEST_CASE("structural checks reject double assignment") {
  auto d = first_diagnostic(
      "func f() {\n"
      "entry:\n"
      "  %a = add i32 1, 2\n"
      "  %a = add i32 3, 4\n"
      "  ret i32 %a\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("assigned twice") != std::string::npos);
}

TEST_CASE("structural checks reject unknown branch targets") {
  auto d = first_diagnostic(
      "func f(%x) {\n"
      "entry:\n"
      "  br nowhere\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("nowhere") != std::string::npos);
}

TEST_CASE("structural checks reject cyclic control flow") {
  auto d = first_diagnostic(
      "func f(%x) {\n"
      "entry:\n"
      "  br a\n"
      "a:\n"
      "  br b\n"
      "b:\n"
      "  br a\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("cyclic") != std::string::npos);
}

TEST_CASE("structural checks reject unreachable blocks") {
  auto d = first_diagnostic(
      "func f(%x) {\n"
      "entry:\n"
      "  ret i32 %x\n"
      "island:\n"
      "  ret i32 0\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("island") != std::string::npos);
}

TEST_CASE("structural checks reject use of undefined registers") {
  auto d = first_diagnostic(
      "func f(%x) {\n"
      "entry:\n"
      "  %a = add i32 %ghost, 1\n"
      "  ret i32 %a\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("%ghost") != std::string::npos);
}

TEST_CASE("structural checks reject defs that only happen on one path") {
  auto d = first_diagnostic(
      "func f(%x) {\n"
      "entry:\n"
      "  %c = icmp slt i32 %x, 0\n"
      "  br %c, a, b\n"
      "a:\n"
      "  %v = add i32 %x, 1\n"
      "  br b\n"
      "b:\n"
      "  ret i32 %v\n"
      "}\n");
  REQUIRE(d.has_value());
  CHECK(d->find("%v") != std::string::npos);
}

TEST_CASE("empty module diagnostic") {
  auto r = parse_module("; nothing here\n");
  REQUIRE(!r.ok());
  CHECK(r.error.message == "empty module");
}
