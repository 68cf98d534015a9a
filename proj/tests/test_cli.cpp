#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the binary with `args` (already shell-quoted), stdout only.
Run run(const std::string& args) {
  const std::string cmd = std::string(TMC_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fx(const char* name) { return std::string("'") + TMC_FIXTURES + "/" + name + "'"; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("check subcommand") {
  const Run a = run("check " + fx("unbounded.ta") + " '(x<=0) ~s (x>0)' --logic lc --state l:x=0");
  CHECK(a.status == 0);
  CHECK(first_line(a.out) == "true");
  CHECK(a.out.find("point l:x=0: true") != std::string::npos);

  const Run b = run("check " + fx("zeno.ta") + " 'AF(x>=1)' --logic tctl --state l:x=0");
  CHECK(b.status == 0);
  CHECK(first_line(b.out) == "true");

  const Run c = run("check " + fx("zeno.ta") + " 'AF(x>=1)' --logic tctl --variant n --state l:x=0");
  CHECK(c.status == 0);
  CHECK(first_line(c.out) == "false");

  const Run d = run("check " + fx("open_bound.ta") + " 'exists x = 1' --logic lnu --state l1:x=0 --format structured");
  CHECK(d.status == 0);
  CHECK(d.out.find("\"holds\": false") != std::string::npos);
}

TEST_CASE("regions, translate and oracle subcommands") {
  const Run r = run("regions " + fx("unbounded.ta"));
  CHECK(r.status == 0);
  CHECK(r.out == "r0: x=0\nr1: x>0\n2 regions\n");

  const Run s = run("regions " + fx("unbounded.ta") + " --bound 1 --format structured");
  CHECK(s.out == "regions=4\nregion.0=x=0\nregion.1=0<x<1\nregion.2=x=1\nregion.3=x>1\n");

  const Run t = run("translate '(x<=0) ~s (x>0)' --logic lc");
  CHECK(t.status == 0);
  CHECK(t.out == "(E{x<=0}x>0)\n");

  const Run o = run("oracle " + fx("unbounded.ta") + " '(x<=0) ~s (x>0)' --logic lc --state l:x=0");
  CHECK(o.out == "true\n");
  const Run strict = run("oracle " + fx("unbounded.ta") + " '(x<=0) ~s (x>0)' --logic lc --state l:x=0 --strict");
  CHECK(strict.out == "false\n");
}

TEST_CASE("graph output is byte-stable") {
  std::ifstream in(std::string(TMC_FIXTURES) + "/unbounded.dot");
  std::stringstream golden;
  golden << in.rdbuf();
  const Run first = run("graph " + fx("unbounded.ta"));
  const Run second = run("graph " + fx("unbounded.ta"));
  CHECK(first.status == 0);
  CHECK(first.out == golden.str());
  CHECK(second.out == first.out);
}

TEST_CASE("exit codes") {
  CHECK(run("check " + fx("unbounded.ta") + " 'p ~s' --logic lc").status == 2);
  CHECK(run("check " + fx("unbounded.ta") + " 'tt' --logic nosuch").status == 2);
  CHECK(run("check " + fx("unbounded.ta") + " 'q'").status == 3);
  CHECK(run("check " + fx("unbounded.ta") + " 'x < 1' --state l:y=0").status == 3);
  CHECK(run("check " + fx("missing.ta") + " 'tt'").status == 4);
  CHECK(run("oracle " + fx("unbounded.ta") + " 'mu X. X' --state l:x=0").status == 3);
}
