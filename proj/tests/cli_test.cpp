#include <gtest/gtest.h>

#include <sstream>

#include "epsilite/cli.hpp"
#include "test_support.hpp"

namespace {

using namespace epsilite;
using epsilite::testing::data_path;
using epsilite::testing::data_text;
namespace fs = std::filesystem;

std::string diagnostic_of(std::string_view spec) {
  try {
    cli::parse_model_spec(spec);
  } catch (const DiagnosticError& e) {
    EXPECT_EQ(e.diagnostics().front().location.file, "--model");
    return e.diagnostics().front().message;
  }
  ADD_FAILURE() << "accepted: " << spec;
  return {};
}

TEST(ParseModelSpec, FullBinding) {
  auto b = cli::parse_model_spec("name=M,metamodel=g.mm,model=g.model,access=rw,out=g2.model");
  EXPECT_EQ(b.name, "M");
  EXPECT_EQ(b.metamodel, "g.mm");
  EXPECT_EQ(b.model, fs::path("g.model"));
  EXPECT_EQ(b.access, Access::read_write);
  EXPECT_EQ(b.out, fs::path("g2.model"));
}

TEST(ParseModelSpec, OptionalKeys) {
  auto b = cli::parse_model_spec("access=w,metamodel=x.mm,name=N");
  EXPECT_FALSE(b.model);
  EXPECT_FALSE(b.out);
  EXPECT_EQ(b.access, Access::write_only);
  EXPECT_EQ(cli::parse_model_spec("name=N,metamodel=x.mm,access=r").access, Access::read_only);
}

TEST(ParseModelSpec, Rejections) {
  EXPECT_NE(diagnostic_of("name=M,access=rw").find("metamodel"), std::string::npos);
  EXPECT_NE(diagnostic_of("name=M,metamodel=g.mm,access=r,out=x").find("out"), std::string::npos);
  EXPECT_NE(diagnostic_of("name=M,metamodel=g.mm").find("access"), std::string::npos);
  EXPECT_NE(diagnostic_of("name=M,metamodel=g.mm,access=x").find("access"), std::string::npos);
  EXPECT_NE(diagnostic_of("name=M,metamodel=g.mm,access=r,colour=red").find("colour"), std::string::npos);
  diagnostic_of("name=M,name=N,metamodel=g.mm,access=r");
  diagnostic_of("name=M,metamodel,access=r");
  diagnostic_of("name=,metamodel=g.mm,access=r");
  diagnostic_of("");
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("epsilite_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args, const std::string& input = {}) {
    std::ostringstream out, err;
    std::istringstream in(input);
    int code = cli::run(args, out, err, in);
    out_ = out.str();
    err_ = err.str();
    return code;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string copy(const std::string& fixture) const {
    fs::copy_file(data_path(fixture), dir_ / fixture);
    return path(fixture);
  }
  static std::string data(const std::string& name) { return data_path(name).string(); }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

TEST_F(CliRun, EolWritesOutModel) {
  EXPECT_EQ(run({"run-eol", data("hello.eol"), "--model",
                 "name=M,metamodel=" + data("greeting.mm") + ",access=w,out=" + path("out.model")}),
            0)
      << err_;
  EXPECT_EQ(read_text_file(path("out.model")), "e1 : Greeting {\n  text = \"Hello World\"\n}\n");
  EXPECT_TRUE(out_.empty());
}

TEST_F(CliRun, EolPrintsAndReadOnlyKeepsFiles) {
  EXPECT_EQ(run({"run-eol", data("counting.eol"), "--model",
                 "name=G,metamodel=" + data("graph.mm") + ",model=" + data("g1.model") + ",access=r"}),
            0);
  EXPECT_EQ(out_, "4\n1\n1\n");

  std::string model = copy("g1.model");
  EXPECT_EQ(run({"run-eol", data("reverse.eol"), "--model",
                 "name=G,metamodel=" + data("graph.mm") + ",model=" + model + ",access=r"}),
            2);
  EXPECT_NE(err_.find("read-only"), std::string::npos) << err_;
  EXPECT_EQ(read_text_file(model), data_text("g1.model"));
}

TEST_F(CliRun, FailedRunDoesNotWriteOut) {
  std::string model = copy("g1.model");
  fs::path script = dir_ / "half.eol";
  write_text_file(script, "Edge.all.first.src = Edge.all.first.trg;\nNode.all.first.nope;\n");
  EXPECT_EQ(run({"run-eol", script.string(), "--model",
                 "name=G,metamodel=" + data("graph.mm") + ",model=" + model + ",access=rw,out=" + model}),
            2);
  EXPECT_EQ(read_text_file(model), data_text("g1.model"));
  EXPECT_NE(err_.find("half.eol:2:"), std::string::npos) << err_;
}

TEST_F(CliRun, EglToStdoutAndFile) {
  std::string spec = "name=M,metamodel=" + data("greeting_extended.mm") + ",model=" + data("franz.model") + ",access=r";
  EXPECT_EQ(run({"run-egl", data("hello.egl"), "--model", spec}), 0) << err_;
  EXPECT_EQ(out_, "Hello Franz!");
  EXPECT_EQ(run({"run-egl", data("hello.egl"), "--model", spec, "--out", path("hello.txt")}), 0);
  EXPECT_EQ(read_text_file(path("hello.txt")), "Hello Franz!");
  EXPECT_TRUE(out_.empty());
}

TEST_F(CliRun, EvlReportFixAndInteractive) {
  std::string model = copy("g2.model");
  std::string spec = "name=G,metamodel=" + data("graph.mm") + ",model=" + model;
  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec + ",access=r"}), 1);
  EXPECT_EQ(out_, "VIOLATION DanglingEdges Edge#e5: The edge Edge#e5 is dangling.\n  fix[0]: Remove this edge\n");
  EXPECT_EQ(read_text_file(model), data_text("g2.model"));

  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec + ",access=rw,out=" + path("skip.model"),
                 "--interactive"},
                "7\ns\n"),
            1);
  EXPECT_NE(out_.find("invalid choice '7'"), std::string::npos);
  EXPECT_EQ(read_text_file(path("skip.model")), data_text("g2.model"));

  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec + ",access=rw,out=" + path("fixed.model"),
                 "--interactive"},
                "0\n"),
            0);
  EXPECT_EQ(read_text_file(path("fixed.model")), data_text("g1.model"));

  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec + ",access=rw,out=" + path("fixed2.model"),
                 "--fix", "DanglingEdges:0"}),
            0);
  EXPECT_EQ(out_, "FIXED DanglingEdges Edge#e5: Remove this edge\n");
  EXPECT_EQ(read_text_file(path("fixed2.model")), data_text("g1.model"));
}

TEST_F(CliRun, EvlOptionErrors) {
  std::string spec = "name=G,metamodel=" + data("graph.mm") + ",model=" + data("g2.model") + ",access=rw";
  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec, "--fix", "DanglingEdges:3"}), 2);
  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec, "--fix", "DanglingEdges"}), 2);
  EXPECT_EQ(run({"run-evl", data("dangling.evl"), "--model", spec, "--fix", "DanglingEdges:0", "--interactive"}), 2);
}

TEST_F(CliRun, FlockWritesMigratedModel) {
  std::string original = copy("g1.model");
  EXPECT_EQ(run({"run-flock", data("evolve.mig"), "--original",
                 "name=G,metamodel=" + data("graph.mm") + ",model=" + original + ",access=r",
                 "--target-metamodel", data("graph_evolved.mm"), "--out", path("evolved.model")}),
            0)
      << err_;
  Model evolved = load_model(path("evolved.model"), load_metamodel(data("graph_evolved.mm")), "E");
  EXPECT_EQ(evolved.get_feature("g", "gcs").as_collection()->items.size(), 8u);
  EXPECT_EQ(read_text_file(original), data_text("g1.model"));
}

TEST_F(CliRun, UsageAndIoErrors) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"run-nothing"}), 2);
  EXPECT_EQ(run({"run-eol", path("missing.eol"), "--model", "name=M,metamodel=" + data("greeting.mm") + ",access=w"}), 2);
  EXPECT_FALSE(err_.empty());
  EXPECT_EQ(run({"run-eol", data("hello.eol"), "--model", "name=M,metamodel=" + path("nope.mm") + ",access=w"}), 2);
  EXPECT_EQ(run({"run-eol", data("hello.eol"), "--model", "name=M,access=w"}), 2);
  EXPECT_NE(err_.find("--model"), std::string::npos) << err_;
  EXPECT_EQ(run({"run-eol", data("hello.eol"), "--model", "name=M,metamodel=" + data("greeting.mm") + ",access=w",
                 "--model", "name=M,metamodel=" + data("greeting.mm") + ",access=w"}),
            2);
  EXPECT_TRUE(out_.empty());
}

}  // namespace
