#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef ED1X_CLI_PATH
#error "ED1X_CLI_PATH must point at the ed1x binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = ::testing::TempDir() + "ed1x_cli_XXXXXX";
    ASSERT_NE(mkdtemp(dir_.data()), nullptr);
  }

  std::string path(const std::string& name) const { return dir_ + "/" + name; }

  RunResult run(const std::string& args, const std::string& stdin_text = "") {
    std::string in_file = path("stdin"), out_file = path("stdout"), err_file = path("stderr");
    spit(in_file, stdin_text);
    std::string cmd = std::string(ED1X_CLI_PATH) + " " + args + " < " + in_file + " > " +
                      out_file + " 2> " + err_file;
    int raw = std::system(cmd.c_str());
    EXPECT_TRUE(WIFEXITED(raw)) << cmd;
    return {WEXITSTATUS(raw), slurp(out_file), slurp(err_file)};
  }

  std::string dir_;
};

TEST_F(CliTest, BuildAndQueryWorkedExample) {
  spit(path("t.txt"), "banana");
  RunResult b = run("build " + path("t.txt") + " " + path("t.idx") + " --b 8");
  ASSERT_EQ(b.exit_code, 0) << b.err;

  RunResult q = run("query " + path("t.idx") + " --pattern nana");
  EXPECT_EQ(q.exit_code, 0) << q.err;
  EXPECT_EQ(q.out,
            "1\t4\tsub\t1\tb\n"
            "2\t3\tdel\t1\tn\n"
            "2\t5\tins\t1\ta\n"
            "3\t3\tdel\t4\ta\n"
            "3\t4\texact\t\t\n"
            "4\t3\tdel\t1\tn\n");

  for (const char* engine : {"small", "large", "both"}) {
    RunResult qe = run("query " + path("t.idx") + " --engine " + engine + " --pattern nana");
    EXPECT_EQ(qe.exit_code, 0);
    EXPECT_EQ(qe.out, q.out) << engine;
  }
}

TEST_F(CliTest, StdinPatternsAndBlankLineSeparator) {
  spit(path("t.txt"), "banana");
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("t.idx") + " --b 8").exit_code, 0);
  RunResult q = run("query " + path("t.idx"), "ban\nzzz\nana\n");
  EXPECT_EQ(q.exit_code, 0);
  // three pattern blocks, two blank separators; the middle block is empty
  EXPECT_EQ(q.out,
            "1\t2\tdel\t3\tn\n"
            "1\t3\texact\t\t\n"
            "1\t4\tins\t4\ta\n"
            "2\t2\tdel\t1\tb\n"
            "3\t3\tsub\t1\tn\n"
            "4\t2\tdel\t1\tb\n"
            "\n"
            "\n"
            "1\t4\tins\t1\tb\n"
            "2\t2\tdel\t3\ta\n"
            "2\t3\texact\t\t\n"
            "2\t4\tins\t4\tn\n"
            "3\t2\tdel\t1\ta\n"
            "3\t4\tins\t1\tn\n"
            "4\t2\tdel\t3\ta\n"
            "4\t3\texact\t\t\n"
            "5\t2\tdel\t1\ta\n");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  spit(path("t.txt"), "banana");
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("t.idx") + " --b 8").exit_code, 0);

  RunResult oversize = run("query " + path("t.idx") + " --pattern overlylongpattern");
  EXPECT_EQ(oversize.exit_code, 2);
  EXPECT_NE(oversize.err.find("b=8"), std::string::npos) << oversize.err;

  EXPECT_EQ(run("build " + path("t.txt") + " " + path("x.idx") + " --b 0").exit_code, 2);
  EXPECT_EQ(run("query " + path("missing.idx") + " --pattern a").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);

  spit(path("empty.txt"), "");
  EXPECT_EQ(run("build " + path("empty.txt") + " " + path("x.idx")).exit_code, 2);

  // requesting an engine the index does not hold
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("s.idx") + " --engine small").exit_code, 0);
  EXPECT_EQ(run("query " + path("s.idx") + " --engine large --pattern ana").exit_code, 2);
  EXPECT_EQ(run("query " + path("s.idx") + " --pattern ana").exit_code, 0);  // auto falls back
}

TEST_F(CliTest, CorruptIndexExitsThree) {
  spit(path("t.txt"), "banana");
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("t.idx")).exit_code, 0);
  std::string blob = slurp(path("t.idx"));
  blob[blob.size() / 2] = static_cast<char>(blob[blob.size() / 2] ^ 0x40);
  spit(path("bad.idx"), blob);
  RunResult q = run("query " + path("bad.idx") + " --pattern nana");
  EXPECT_EQ(q.exit_code, 3);
  EXPECT_NE(q.err.find("corrupt"), std::string::npos) << q.err;
}

TEST_F(CliTest, DeterministicBuilds) {
  spit(path("t.txt"), "the rain in spain stays mainly in the plain");
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("a.idx") + " --seed 99 --b 16").exit_code, 0);
  ASSERT_EQ(run("build " + path("t.txt") + " " + path("b.idx") + " --seed 99 --b 16").exit_code, 0);
  EXPECT_EQ(slurp(path("a.idx")), slurp(path("b.idx")));
  EXPECT_FALSE(slurp(path("a.idx")).empty());
}

TEST_F(CliTest, VerifyPassesAndInjectedFaultFails) {
  RunResult ok = run("verify --cases 12 --nmax 80 --mmax 8 --b 10 --seed 3");
  EXPECT_EQ(ok.exit_code, 0) << ok.err;
  EXPECT_NE(ok.out.find("PASS"), std::string::npos);

  RunResult zero = run("verify --cases 0");
  EXPECT_EQ(zero.exit_code, 0);

  RunResult bad = run("verify --cases 4 --nmax 60 --b 10 --seed 3 --inject-fault");
  EXPECT_EQ(bad.exit_code, 3);
  EXPECT_NE(bad.err.find("FAIL"), std::string::npos) << bad.err;

  spit(path("t.txt"), "abracadabra abracadabra");
  RunResult fixed = run("verify " + path("t.txt") + " --cases 10 --mmax 6 --b 8 --seed 4");
  EXPECT_EQ(fixed.exit_code, 0) << fixed.err;
}

TEST_F(CliTest, BenchProducesTableAndScalingBlock) {
  spit(path("a.txt"), "abcabcabcabcabcabcabcabcabcabc");
  spit(path("b.txt"), "abcabcabcabcabcabcabcabcabcabcabcabcabcabcabcabcabcabcabcabc");
  ASSERT_EQ(run("build " + path("a.txt") + " " + path("a.idx") + " --b 8").exit_code, 0);
  ASSERT_EQ(run("build " + path("b.txt") + " " + path("b.idx") + " --b 8").exit_code, 0);

  spit(path("pats.txt"), "abc\ncba\n");
  RunResult two = run("bench " + path("a.idx") + " " + path("b.idx") +
                      " --pattern-file " + path("pats.txt") + " --repeat 2");
  EXPECT_EQ(two.exit_code, 0) << two.err;
  EXPECT_NE(two.out.find("index\tn\tpattern"), std::string::npos);
  EXPECT_NE(two.out.find("scaling across 2 indexes"), std::string::npos);
  EXPECT_NE(two.out.find("max ratio"), std::string::npos);

  spit(path("none.txt"), "");
  RunResult empty = run("bench " + path("a.idx") + " --pattern-file " + path("none.txt"));
  EXPECT_EQ(empty.exit_code, 0);
  EXPECT_EQ(empty.out, "index\tn\tpattern\tm\twall_us\thash\tarray\tcolor\tdownstream\tocc\n");
}

}  // namespace
