/*
 * Copyright 2026 The serpscale authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "serpscale/cli.hpp"

using namespace serpscale;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_(std::string("serpscale_test_") + name) {
    std::ofstream file(path_);
    file << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("distinct reports the jk footnote count") {
  CliResult r = run({"distinct", "--metric", "ndcg", "--variant", "jk",
                     "--b", "2", "--k", "10", "--binary"});
  CHECK(r.code == 0);
  CHECK(r.out.find("count: 768") != std::string::npos);
}

TEST_CASE("distinct lists the eight NDCG@3 values") {
  CliResult r = run({"distinct", "--metric", "ndcg", "--k", "3", "--binary",
                     "--places", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("count: 8") != std::string::npos);
  for (const char* v : {"0.235", "0.296", "0.469", "0.531", "0.704", "0.765"})
    CHECK(r.out.find(v) != std::string::npos);
}

TEST_CASE("audit is silent and clean on the figure universe") {
  for (const char* metric : {"rr", "rbp", "ap", "ndcg", "r1", "err"}) {
    CliResult r = run({"audit", "--metric", metric, "--universe", "perm",
                       "--n0", "3", "--n1", "2"});
    CAPTURE(metric);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
  }
}

TEST_CASE("enumerate lists members with a count") {
  CliResult r = run({"enumerate", "--universe", "perm", "--n0", "3",
                     "--n1", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("11000\n") != std::string::npos);
  CHECK(r.out.find("count: 10") != std::string::npos);
}

TEST_CASE("hasse emits deterministic DOT") {
  CliResult r = run({"hasse", "--k", "2", "--binary"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"10\" -> \"01\" [style=dashed];") != std::string::npos);
  CliResult again = run({"hasse", "--k", "2", "--binary"});
  CHECK(r.out == again.out);
}

TEST_CASE("score runs the full pipeline") {
  TempFile qrels("score.qrels",
                 "q1 0 dA 1\nq1 0 dB 0\nq2 0 dA 0\nq2 0 dB 1\n");
  TempFile runfile("score.run",
                   "q1 Q0 dA 1 2.0 sys\nq1 Q0 dB 2 1.0 sys\n"
                   "q2 Q0 dA 1 2.0 sys\nq2 Q0 dB 2 1.0 sys\n");
  CliResult r = run({"score", "--qrels", qrels.path(), "--run",
                     runfile.path(), "--metric", "rr", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rr\tq1\t1.0000") != std::string::npos);
  CHECK(r.out.find("rr\tq2\t0.5000") != std::string::npos);
  CHECK(r.out.find("rr\tall\t0.7500") != std::string::npos);
}

TEST_CASE("score exits with a data error on empty qrels") {
  TempFile qrels("empty.qrels", "");
  TempFile runfile("empty.run", "q1 Q0 dA 1 1.0 sys\n");
  CliResult r = run({"score", "--qrels", qrels.path(), "--run",
                     runfile.path(), "--metric", "rr", "--k", "1"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("missing files exit with a data error") {
  CliResult r = run({"score", "--qrels", "no_such.qrels", "--run",
                     "no_such.run", "--metric", "rr", "--k", "1"});
  CHECK(r.code == 2);
}

TEST_CASE("intervalize prints the source-to-target table") {
  CliResult r = run({"intervalize", "--metric", "ndcg", "--k", "3",
                     "--binary", "--places", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("source_exact\tsource\ttarget_exact\ttarget\n") == 0);
  CHECK(r.out.find("\t1/7\t") != std::string::npos);
  CHECK(r.out.find("\t2/7\t") != std::string::npos);
}

TEST_CASE("intervalize maps exact raw scores and rejects unmappable ones") {
  CliResult ok = run({"intervalize", "--metric", "rr", "--k", "4",
                      "--binary", "--score", "1/2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("mapped\t1/2\t3/4") != std::string::npos);

  CliResult bad = run({"intervalize", "--metric", "rr", "--k", "4",
                       "--binary", "--score", "2/5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("not a generable value") != std::string::npos);
}

TEST_CASE("intervalize re-scores runs and surfaces recall-base mismatch") {
  TempFile qrels_aligned("iv.qrels", "q1 0 dA 1\nq1 0 dB 1\nq1 0 dC 0\n"
                                     "q1 0 dD 0\nq1 0 dE 0\n");
  TempFile run_aligned("iv.run",
                       "q1 Q0 dA 1 5.0 sys\nq1 Q0 dC 2 4.0 sys\n"
                       "q1 Q0 dB 3 3.0 sys\nq1 Q0 dD 4 2.0 sys\n"
                       "q1 Q0 dE 5 1.0 sys\n");
  // SERP 10100: RBP = 5/8, the seventh of ten values in the n1=2 ladder.
  CliResult ok = run({"intervalize", "--metric", "rbp", "--universe", "perm",
                      "--n0", "3", "--n1", "2", "--apply-qrels",
                      qrels_aligned.path(), "--apply-run",
                      run_aligned.path(), "--apply-k", "5"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("rbp[1/2]\tq1\t0.6250\t") != std::string::npos);

  // A navigational topic emits 1/2, which the n1=2 universe cannot produce.
  TempFile qrels_nav("ivnav.qrels", "q1 0 dA 1\nq1 0 dB 0\nq1 0 dC 0\n"
                                    "q1 0 dD 0\nq1 0 dE 0\n");
  CliResult mismatch = run({"intervalize", "--metric", "rbp", "--universe",
                            "perm", "--n0", "3", "--n1", "2",
                            "--apply-qrels", qrels_nav.path(),
                            "--apply-run", run_aligned.path(),
                            "--apply-k", "5"});
  CHECK(mismatch.code == 2);
  CHECK(mismatch.err.find("not a generable value") != std::string::npos);
}

TEST_CASE("intervalize can emit one row per universe member") {
  CliResult r = run({"intervalize", "--metric", "rr", "--k", "3", "--binary",
                     "--members"});
  CHECK(r.code == 0);
  CHECK(r.out.find("member\traw_exact\traw\tmapped_exact\tmapped\n") == 0);
  CHECK(r.out.find("100\t1\t1.0000\t1\t1.0000") != std::string::npos);
  CHECK(r.out.find("000\t0\t0.0000\t0\t0.0000") != std::string::npos);
  // eight members plus the header
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
}

TEST_CASE("graded scoring flows through a gain map file") {
  TempFile gains("graded.gains", "G0\t0\nG1\t1/4\nG2\t3/4\nG3\t1\n");
  TempFile qrels("graded.qrels",
                 "q1 0 dA 1\nq1 0 dB 3\nq1 0 dC 0\nq1 0 dD 0\nq1 0 dE 2\n");
  TempFile runfile("graded.run",
                   "q1 Q0 dA 1 5.0 sys\nq1 Q0 dB 2 4.0 sys\n"
                   "q1 Q0 dC 3 3.0 sys\nq1 Q0 dD 4 2.0 sys\n"
                   "q1 Q0 dE 5 1.0 sys\n");
  // SERP is G1,G3,G0,G0,G2; mean gain over five ranks is 2/5.
  CliResult r = run({"score", "--qrels", qrels.path(), "--run",
                     runfile.path(), "--metric", "prec", "--k", "5",
                     "--gains", gains.path()});
  CHECK(r.code == 0);
  CHECK(r.out.find("prec\tq1\t0.4000") != std::string::npos);

  setenv("SERPSCALE_GAIN_MAP", gains.path().c_str(), 1);
  CliResult via_env = run({"score", "--qrels", qrels.path(), "--run",
                           runfile.path(), "--metric", "prec", "--k", "5"});
  unsetenv("SERPSCALE_GAIN_MAP");
  CHECK(via_env.code == 0);
  CHECK(via_env.out == r.out);
}

TEST_CASE("usage errors exit with code one") {
  CHECK(run({"distinct", "--metric", "nope", "--k", "3"}).code == 1);
  CHECK(run({"no_such_command"}).code == 1);
  CHECK(run({"audit", "--universe", "perm", "--n0", "3", "--n1", "2"}).code ==
        1);  // --metric is required
  CHECK(run({"distinct", "--metric", "rbp", "--k", "3", "--phi", "2"}).code ==
        1);  // persistence outside (0,1)
  CHECK(run({"enumerate", "--universe", "perm", "--census", "3,x"}).code ==
        1);
  CHECK(run({"enumerate", "--k", "3", "--binary", "--capped"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("help exits cleanly") {
  CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("score") != std::string::npos);
}

TEST_CASE("the capacity guard surfaces as a data error unless lifted") {
  CliResult blocked = run({"enumerate", "--k", "21", "--binary"});
  CHECK(blocked.code == 2);
  CliResult capped = run({"enumerate", "--k", "21", "--binary", "--census",
                          "21,1", "--allow-large"});
  CHECK(capped.code == 0);
  CHECK(capped.out.find("count: 22") != std::string::npos);
}

TEST_CASE("output lands in a file when requested") {
  TempFile sink("out.tsv", "");
  CliResult r = run({"enumerate", "--k", "1", "--binary", "--output",
                     sink.path()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(sink.path());
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "0\n1\ncount: 2\n");
}
