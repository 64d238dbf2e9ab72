#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "untangle/core.hpp"

namespace untangle {
namespace {

using testing::P;

Process pre(Action a, Process k = Process::inert()) { return Process::prefix(std::move(a), std::move(k)); }

TEST(Name, ValidatesIdentifiers) {
  EXPECT_EQ(Name("a_1").str(), "a_1");
  EXPECT_THROW(Name("1a"), std::invalid_argument);
  EXPECT_THROW(Name(""), std::invalid_argument);
  EXPECT_THROW(Name("a-b"), std::invalid_argument);
  EXPECT_EQ(Name("abc"), Name("abc"));
  EXPECT_NE(Name("abc"), Name("abd"));
}

TEST(Action, CoFlipsOnlyPolarity) {
  const Action a = in("x");
  EXPECT_EQ(co(a), out("x"));
  EXPECT_EQ(co(co(a)), a);
  EXPECT_EQ(co(co(Polarity::Out)), Polarity::Out);
}

TEST(Parse, Inert) { EXPECT_EQ(P("0"), Process::inert()); }

TEST(Parse, ExampleP1) {
  const Process expected =
      Process::par(pre(in("a"), pre(in("b"))),
                   Process::par(pre(out("b"), pre(out("c"))), pre(in("c"), pre(out("a")))));
  EXPECT_EQ(P("a.b.0 | ~b.~c.0 | c.~a.0"), expected);
}

TEST(Parse, ExampleP4WithSpacing) {
  const Process expected =
      pre(in("a"), Process::par(pre(in("b"), pre(out("a"))), pre(out("b"))));
  EXPECT_EQ(P("a . ( b.~a.0 | ~b.0 )"), expected);
}

TEST(Parse, CommentsAndParentheses) {
  EXPECT_EQ(P("# header\n((a.0)) | # trailing\n ~a.0"), P("a.0 | ~a.0"));
  EXPECT_EQ(P("(a.0 | b.0) | c.0").left(), P("a.0 | b.0"));
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    P("a.0 |\n  b.");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(P("a"), ParseError);
  EXPECT_THROW(P("a.0 )"), ParseError);
  EXPECT_THROW(P("(a.0"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("~.0"), ParseError);
  EXPECT_THROW(P("a.0 | | b.0"), ParseError);
}

TEST(ParseFile, BlankLinesSeparateProcesses) {
  const auto procs = parse_file("# first\na.0 |\n ~a.0\n\n\n   \nb.0\n# only a comment\n\n# x\n");
  ASSERT_EQ(procs.size(), 2u);
  EXPECT_EQ(procs[0].term, P("a.0 | ~a.0"));
  EXPECT_EQ(procs[0].first_line, 2u);
  EXPECT_EQ(procs[1].term, P("b.0"));
  EXPECT_EQ(procs[1].first_line, 7u);
  ASSERT_EQ(procs[0].sites.size(), 2u);
  EXPECT_EQ(procs[0].sites[1].line, 3u);
  EXPECT_EQ(procs[0].sites[1].column, 2u);
}

TEST(ParseFile, ErrorLineIsAbsolute) {
  try {
    parse_file("a.0\n\nb.0\nc.");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Print, Examples) {
  EXPECT_EQ(print(Process::inert()), "0");
  EXPECT_EQ(print(pre(out("a"))), "~a.0");
  EXPECT_EQ(print(Process::par(pre(in("a")), pre(out("a")))), "a.0 | ~a.0");
  EXPECT_EQ(print(P("(a.0 | b.0) | c.0")), "(a.0 | b.0) | c.0");
  EXPECT_EQ(print(P("a.(b.0 | c.0)")), "a.(b.0 | c.0)");
  EXPECT_EQ(print(P("a.0 | (b.0 | c.0)")), "a.0 | b.0 | c.0");
  EXPECT_EQ(print(P("(a.0 | b.0) | (c.0 | d.0)")), "(a.0 | b.0) | (c.0 | d.0)");
  EXPECT_EQ(print(P("((a.0 | b.0) | c.0) | d.0")), "((a.0 | b.0) | c.0) | d.0");
}

TEST(Canonical, Examples) {
  EXPECT_TRUE(canonical(P("0 | 0")).empty());
  EXPECT_EQ(canonical(P("0 | 0")).key(), "0");
  EXPECT_EQ(canonical(P("(a.0 | 0) | b.0")).texts(), (std::vector<std::string>{"a.0", "b.0"}));
  EXPECT_EQ(canonical(P(testing::kP1)).texts(),
            (std::vector<std::string>{"a.b.0", "c.~a.0", "~b.~c.0"}));
}

TEST(Canonical, ContinuationsAreCanonical) {
  const auto c = canonical(P("a.(0 | (~c.0 | b.0)) | a.0"));
  EXPECT_EQ(c.texts(), (std::vector<std::string>{"a.(b.0 | ~c.0)", "a.0"}));
}

TEST(Canonical, KeepsMultiplicity) {
  EXPECT_EQ(canonical(P("a.0 | a.0 | 0")).size(), 2u);
}

TEST(StructEq, Examples) {
  EXPECT_TRUE(struct_eq(P("a.0 | b.0"), P("b.0 | a.0")));
  EXPECT_TRUE(struct_eq(P("a.0"), P("a.0 | 0")));
  EXPECT_FALSE(struct_eq(P("a.b.0"), P("b.a.0")));
  EXPECT_FALSE(struct_eq(P("a.0 | a.0"), P("a.0")));
}

TEST(Names, Examples) {
  EXPECT_TRUE(names(P("0")).empty());
  EXPECT_EQ(names(P(testing::kP1)), (std::set<Name>{Name("a"), Name("b"), Name("c")}));
  EXPECT_EQ(names(P("~a.0")), (std::set<Name>{Name("a")}));
}

TEST(PrefixCount, CountsEveryPrefix) {
  EXPECT_EQ(prefix_count(P(testing::kP2)), 8u);
}

TEST(CoreProperties, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Process p = testing::random_term(rng, 6);
    EXPECT_EQ(parse(print(p)), p) << print(p);
  }
}

TEST(CoreProperties, CanonicalIsIdempotent) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto c = canonical(testing::random_term(rng, 6));
    EXPECT_EQ(canonical(parse(c.key())), c);
    EXPECT_EQ(canonical(c.to_process()), c);
  }
}

TEST(CoreProperties, NamesInvariantUnderCanonical) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Process p = testing::random_term(rng, 6);
    EXPECT_EQ(names(canonical(p)), names(p));
    EXPECT_EQ(names(canonical(p).to_process()), names(p));
  }
}

TEST(CoreProperties, StructEqIsACongruence) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    const Process p = testing::random_term(rng, 4, 2);
    const Process q = testing::random_term(rng, 4, 2);
    const Process r = testing::random_term(rng, 4, 2);
    EXPECT_TRUE(struct_eq(p, p));
    EXPECT_EQ(struct_eq(p, q), struct_eq(q, p));
    if (struct_eq(p, q) && struct_eq(q, r)) EXPECT_TRUE(struct_eq(p, r));
    EXPECT_TRUE(struct_eq(Process::par(p, Process::par(q, r)), Process::par(Process::par(r, p), q)));
    const Process p2 = testing::reshuffle(p, rng);
    EXPECT_TRUE(struct_eq(p, p2));
    EXPECT_TRUE(struct_eq(Process::par(p, r), Process::par(r, p2)));
    EXPECT_TRUE(struct_eq(Process::prefix(in("z"), p), Process::prefix(in("z"), p2)));
  }
}

}  // namespace
}  // namespace untangle
