#include <gtest/gtest.h>

#include <random>

#include "epsilite/egl.hpp"
#include "test_support.hpp"

namespace {

using namespace epsilite;
using epsilite::testing::data_metamodel;
using epsilite::testing::data_model;
using epsilite::testing::data_text;

std::string concat_sources(const egl::Template& t) {
  std::string s;
  for (const auto& section : t.sections) s += section.source;
  return s;
}

std::string render_text(std::string_view text, Repository& repo) {
  egl::RenderResult r = egl::render(egl::parse_egl(text, "t.egl"), repo);
  EXPECT_FALSE(r.error) << r.error->message();
  return r.text;
}

TEST(ParseEgl, HelloTemplateSections) {
  egl::Template t = egl::parse_egl(data_text("hello.egl"));
  std::vector<std::string> statics;
  int dynamic = 0;
  for (const auto& s : t.sections) {
    if (auto* st = std::get_if<egl::StaticSection>(&s.body)) statics.push_back(st->text);
    else ++dynamic;
  }
  EXPECT_EQ(dynamic, 3);
  EXPECT_EQ(statics, (std::vector<std::string>{" ", "!"}));
  EXPECT_EQ(concat_sources(t), data_text("hello.egl"));
}

TEST(ParseEgl, PureText) {
  egl::Template t = egl::parse_egl("abc");
  ASSERT_EQ(t.sections.size(), 1u);
  EXPECT_EQ(std::get<egl::StaticSection>(t.sections[0].body).text, "abc");
  EXPECT_TRUE(egl::parse_egl("").sections.empty());
}

TEST(ParseEgl, StatementErrorPointsInsideTag) {
  try {
    egl::parse_egl("line one\nxx[% var x %]", "t.egl");
    FAIL();
  } catch (const DiagnosticError& e) {
    const auto& loc = e.diagnostics().front().location;
    EXPECT_EQ(loc.file, "t.egl");
    EXPECT_EQ(loc.line, 2);
    EXPECT_GT(loc.column, 5);
    EXPECT_LE(loc.column, 12);
  }
}

TEST(ParseEgl, SectionsMustBeCompleteStatementLists) {
  EXPECT_THROW(egl::parse_egl("[% for (n in Node.all) { %]x[% } %]"), DiagnosticError);
}

TEST(ParseEgl, UnterminatedAndBadShortcut) {
  EXPECT_THROW(egl::parse_egl("a [% var x = 1;"), DiagnosticError);
  EXPECT_THROW(egl::parse_egl("a [%= 1 + %]"), DiagnosticError);
  EXPECT_THROW(egl::parse_egl("a [%= 1; 2 %]"), DiagnosticError);
  EXPECT_NO_THROW(egl::parse_egl("a %] b"));
}

TEST(Render, HelloAgainstBothGreetingModels) {
  auto mm = data_metamodel("greeting_extended.mm");
  Repository built;
  built.add(Model("M", mm));
  ASSERT_FALSE(eol::run_program(eol::parse_eol(data_text("hello_extended.eol")), built).error);
  EXPECT_EQ(render_text(data_text("hello.egl"), built), "Hello TTC Participants!");

  Repository franz;
  franz.add(data_model("franz.model", "greeting_extended.mm", "M", Access::read_only));
  EXPECT_EQ(render_text(data_text("hello.egl"), franz), "Hello Franz!");
}

TEST(Render, Shortcut) {
  Repository repo;
  EXPECT_EQ(render_text("a[%=1+1%]b", repo), "a2b");
}

TEST(Render, OutAndSharedVariables) {
  Repository repo;
  EXPECT_EQ(render_text("[% var x = 2; out.print(x); %]-[% out.println(x + 1); %][%=x%]", repo),
            "2-3\n2");
  egl::RenderResult r = egl::render(egl::parse_egl("[% \"side\".println(); %]body"), repo);
  EXPECT_EQ(r.text, "body");
  EXPECT_EQ(r.output, "side\n");
}

TEST(Render, ErrorKeepsPartialText) {
  Repository repo;
  egl::RenderResult r = egl::render(egl::parse_egl("before [%=missing%] after", "t.egl"), repo);
  EXPECT_EQ(r.text, "before ");
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.error->location().column, 11);
}

TEST(Render, Deterministic) {
  Repository repo;
  repo.add(data_model("g1.model", "graph.mm", "G", Access::read_only));
  std::string tmpl = "[% for (n in Node.all) { out.println(n.name + \":\" + Edge.all.select(e|e.src == n).size); } %]";
  std::string first = render_text(tmpl, repo);
  EXPECT_EQ(first, "n1:1\nn2:2\nn3:1\nn4:0\n");
  EXPECT_EQ(render_text(tmpl, repo), first);
}

// Random text without tags renders to itself, and sources always concatenate
// back to the input.
TEST(EglProperty, StaticTextIsVerbatim) {
  std::mt19937 rng(3);
  const std::string alphabet = "ab %]\n\t[=\"{}";
  Repository repo;
  for (int i = 0; i < 200; ++i) {
    std::string text;
    for (int k = std::uniform_int_distribution<int>(0, 30)(rng); k > 0; --k)
      text += alphabet[rng() % alphabet.size()];
    if (text.find("[%") != std::string::npos) continue;
    egl::Template t = egl::parse_egl(text);
    EXPECT_EQ(concat_sources(t), text);
    EXPECT_EQ(render_text(text, repo), text);
  }
  for (std::string text : {"x[%=1%]y\n[% var a = 1; %] [%=a%]", "[%%]", "[%=\"x\"%]tail"}) {
    EXPECT_EQ(concat_sources(egl::parse_egl(text)), text);
  }
}

}  // namespace
