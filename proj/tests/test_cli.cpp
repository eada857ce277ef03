#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "haarcp/cli.hpp"

using namespace haarcp;

namespace {

const std::string kData = HAARCP_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::string &verb, std::vector<std::string> inputs,
            void (*tweak)(cli::Command &) = nullptr) {
  cli::Command cmd;
  cmd.verb = verb;
  cmd.inputs = std::move(inputs);
  if (tweak)
    tweak(cmd);
  std::ostringstream out, err;
  int code = cli::run(cmd, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string &hay, const std::string &needle) {
  return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("cp of A5 by all three algorithms", "[cli]") {
  Outcome r = run("cp", {"alternating", "5"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "group          A5 (order 60)\n"
                 "pair-count     1/12\n"
                 "class-count    1/12\n"
                 "coset-formula  1/12\n"
                 "PASS\n");
  CHECK(r.err.empty());

  Outcome m = run("cp", {"quaternion8"}, [](cli::Command &c) { c.machine = true; });
  CHECK(m.code == cli::kExitOk);
  CHECK(m.out == "Q8|8|5/8|5/8|5/8|PASS\n");
}

TEST_CASE("center with the commutation matrix", "[cli]") {
  Outcome r = run("center", {"quaternion8"}, [](cli::Command &c) { c.matrix = true; });
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "order   8\n"
                 "center  2 (index 4)\n"
                 "members 0 3\n"
                 "commutation-matrix (sum 10)\n"
                 "4\n1111\n1100\n1010\n1001\n");
}

TEST_CASE("fc of a model file", "[cli]") {
  Outcome r = run("fc", {kData + "/o2.model"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "torus_rank    1\n"));
  CHECK(contains(r.out, "index         2\n"));
  CHECK(contains(r.out, "kernel        0 \n"));
}

TEST_CASE("classify verdicts and the violation exit code", "[cli]") {
  Outcome sl = run("classify", {"SL(2,5)"});
  CHECK(sl.code == cli::kExitOk);
  CHECK(contains(sl.out, "cp        3/40\n"));
  CHECK(contains(sl.out, "verdict   NonsolvableBelowThreshold\n"));

  Outcome a5 = run("classify", {"A5xC6"});
  CHECK(a5.code == cli::kExitOk);
  CHECK(contains(a5.out, "evidence  |Z| = 6, G/Z = A5, G' = A5, |G'Z| = 360\n"));
  CHECK(contains(a5.out, "verdict   A5TimesAbelian\n"));

  Outcome s5 = run("classify", {"symmetric", "5"}, [](cli::Command &c) {
    c.threshold = "1/20";
    c.machine = true;
  });
  CHECK(s5.code == cli::kExitViolation);
  CHECK(s5.out == "S5|120|7/120|0|THEOREM VIOLATION\n");
}

TEST_CASE("isoclinic D4 and Q8", "[cli]") {
  Outcome r = run("isoclinic", {"dihedral", "4", "quaternion8"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "D4 and Q8 are isoclinic\n"));
  CHECK(contains(r.out, "quotient-map 4\n"));
  CHECK(contains(r.out, "sum c   10 10\n"));
  CHECK(contains(r.out, "cp      5/8 5/8\n"));
  CHECK(contains(r.out, "PASS\n"));

  Outcome no = run("isoclinic", {"symmetric", "3", "cyclic", "6"});
  CHECK(no.code == cli::kExitOk);
  CHECK(no.out == "S3 and C6 are not isoclinic\n");
}

TEST_CASE("stem group of A5 x C6", "[cli]") {
  Outcome r = run("stem", {"A5xC6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "stem    A5 (order 60)\n"));
  CHECK(contains(r.out, "cp      1/12 1/12\n"));
  CHECK(contains(r.out, "PASS\n"));
}

TEST_CASE("verify-t1 and verify-t2", "[cli]") {
  Outcome t1 = run("verify-t1", {kData + "/rot4_q8.model"});
  CHECK(t1.code == cli::kExitOk);
  CHECK(contains(t1.out, "PASS  cp direct = cp(FC)/|G:FC|^2  (5/128 vs 5/128)\n"));
  CHECK_FALSE(contains(t1.out, "FAIL"));

  Outcome t2m = run("verify-t2", {kData + "/o2.model"});
  CHECK(t2m.code == cli::kExitOk);
  CHECK(contains(t2m.out, "sharpness"));
  CHECK(contains(t2m.out, "PASS  cp > 3/40 implies solvable or A5 x abelian"));

  Outcome t2g = run("verify-t2", {"SL(2,5)"});
  CHECK(t2g.code == cli::kExitOk);
  CHECK(contains(t2g.out, "vacuous"));
  CHECK(contains(t2g.out, "(cp = 3/40, NonsolvableBelowThreshold)"));

  Outcome strict = run("verify-t2", {"symmetric", "5"}, [](cli::Command &c) { c.threshold = "1/20"; });
  CHECK(strict.code == cli::kExitViolation);
  CHECK(contains(strict.out, "FAIL  cp > 1/20 implies solvable or A5 x abelian"));
}

TEST_CASE("scan of the data corpus", "[cli]") {
  Outcome r = run("scan", {kData + "/corpus"}, [](cli::Command &c) { c.machine = true; });
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "c2|2|1|1|Abelian\n"
                 "d4|8|5/8|1|SolvableNonabelian\n"
                 "q8|8|5/8|1|SolvableNonabelian\n"
                 "a5|60|1/12|0|A5TimesAbelian\n"
                 "a5xc2|120|1/12|0|A5TimesAbelian\n"
                 "s5|120|7/120|0|NonsolvableBelowThreshold\n"
                 "sl25|120|3/40|0|NonsolvableBelowThreshold\n");

  Outcome table = run("scan", {kData + "/corpus"});
  CHECK(table.out.rfind("name   order  cp     solvable  verdict\n", 0) == 0);

  Outcome strict = run("scan", {kData + "/corpus"}, [](cli::Command &c) { c.threshold = "1/20"; });
  CHECK(strict.code == cli::kExitViolation);
}

TEST_CASE("mc output is deterministic for a seed", "[cli]") {
  auto tweak = [](cli::Command &c) {
    c.samples = 20000;
    c.seed = 11;
  };
  Outcome a = run("mc", {kData + "/o2.model"}, tweak);
  Outcome b = run("mc", {kData + "/o2.model"}, tweak);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "exact     1/4\n"));
  CHECK(contains(a.out, "/20000, seed 11)"));
}

TEST_CASE("input errors exit with code 2", "[cli]") {
  CHECK(run("frobnicate", {"cyclic", "2"}).code == cli::kExitInputError);
  CHECK(run("cp", {kData + "/bad_cycle.group"}).code == cli::kExitInputError);
  CHECK(run("cp", {kData + "/missing.group"}).code == cli::kExitInputError);
  CHECK(run("cp", {"cyclic", "2", "cyclic", "3"}).code == cli::kExitInputError);
  CHECK(run("isoclinic", {"cyclic", "2"}).code == cli::kExitInputError);
  CHECK(run("cp", {}).code == cli::kExitInputError);
  CHECK(run("fc", {kData + "/o2.model", kData + "/rot4.model"}).code == cli::kExitInputError);
  CHECK(run("mc", {kData + "/o2.model"}, [](cli::Command &c) { c.samples = 0; }).code ==
        cli::kExitInputError);

  Outcome decimal = run("classify", {"symmetric", "4"}, [](cli::Command &c) { c.threshold = "0.075"; });
  CHECK(decimal.code == cli::kExitInputError);
  CHECK(contains(decimal.err, "error: "));

  Outcome capped = run("cp", {"symmetric", "6"}, [](cli::Command &c) { c.cap = 100; });
  CHECK(capped.code == cli::kExitInputError);
}

TEST_CASE("HAARCP_CAP sets the closure cap", "[cli]") {
  ::unsetenv("HAARCP_CAP");
  CHECK(cli::cap_from_env() == kDefaultClosureCap);
  ::setenv("HAARCP_CAP", "500", 1);
  CHECK(cli::cap_from_env() == 500);
  ::setenv("HAARCP_CAP", "0", 1);
  CHECK_THROWS_AS(cli::cap_from_env(), ParseError);
  ::setenv("HAARCP_CAP", "lots", 1);
  CHECK_THROWS_AS(cli::cap_from_env(), ParseError);
  ::unsetenv("HAARCP_CAP");
}
