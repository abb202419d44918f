#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nckit/error.hpp"
#include "nckit/job.hpp"
#include "nckit/parse.hpp"

using namespace nckit;

namespace {

std::shared_ptr<const Alphabet> xy() {
  return Alphabet::make({"x", "y"}, {1, 1});
}

void check_bad(const std::string& src, const std::string& needle) {
  auto a = xy();
  try {
    parse_poly(src, a);
    FAIL("no error for: ", src);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadInput);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

void check_bad_job(const std::string& bytes, const std::string& needle) {
  try {
    parse_job(bytes);
    FAIL("no error for: ", bytes);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadInput);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

const char* kSwapJob = R"json({
  "schema": 1,
  "field": { "cyclotomic_order": 1 },
  "algebra": { "catalog": "skew", "q": [["1", "-1"], ["1", "1"]] },
  "action": { "kind": "group", "matrices": [[["0", "1"], ["1", "0"]]] },
  "analyses": ["hilbert", "smallness", "trace", "rpf", "pertinency", "hsmall", "auslander"],
  "degree_bound": 8,
  "guard": 4
})json";

}  // namespace

TEST_CASE("expression parser handles the documented grammar") {
  auto a = xy();
  NcPoly comm = parse_poly("x*y - y*x", a);
  CHECK(comm.str() == "x*y - y*x");
  CHECK(parse_poly("x*y + zeta(2)^1*y*x", a).str() == comm.str());
  CHECK(parse_poly("x*y + zeta(2)*y*x", a).str() == comm.str());

  NcPoly du = parse_poly("x^2*y - 2*x*y*x + y*x^2", a);
  CHECK(du.str() == "x^2*y - 2*x*y*x + y*x^2");

  CHECK(parse_poly("x^0", a).str() == "1");
  CHECK(parse_poly("-x + - y", a).str() == "-x - y");
  CHECK(parse_poly("1/2*x - 3/4", a).str() == "1/2*x - 3/4");
  CHECK(parse_poly("zeta(4)^2*x", a).str() == "-x");
  CHECK(parse_poly("(x + y)^2", a).str() == "x^2 + x*y + y*x + y^2");
  CHECK(parse_poly("3*(x - y)*x", a).str() == "3*x^2 - 3*y*x");
  CHECK(parse_poly("0*x", a).is_zero());
  CHECK(parse_poly("x - x", a).is_zero());
  // `^` binds tighter than unary minus and `*`
  CHECK(parse_poly("-x^2", a).str() == "-x^2");
  CHECK(parse_poly("2*x^3", a).str() == "2*x^3");
}

TEST_CASE("expression parser annotates errors with positions") {
  check_bad("x*w", "position 3: unknown identifier 'w'");
  check_bad("x^-2", "malformed exponent");
  check_bad("x^y", "malformed exponent");
  check_bad("x^", "malformed exponent");
  check_bad("(x + y", "unbalanced parentheses");
  check_bad("x + y)", "unbalanced parentheses");
  check_bad("x y", "position 3");
  check_bad("", "expected a term");
  check_bad("1/0", "zero denominator");
  check_bad("zeta(0)", "zeta order");
  check_bad("zeta", "zeta takes a parenthesized order");
  check_bad("x $ y", "unexpected character");
  check_bad("2*", "expected a term");
}

TEST_CASE("parser round-trips its own printing") {
  auto a = xy();
  const char* fixed[] = {
      "x*y - y*x",
      "x^2*y - 2*x*y*x + y*x^2",
      "1/2*x^4 - 7*y^3 + 2",
      "(1 + zeta(4))*x*y + zeta(3)*y^2",
      "x",
      "0*x",
  };
  for (const char* s : fixed) {
    NcPoly p = parse_poly(s, a);
    NcPoly q = parse_poly(p.str(), a);
    CHECK((p + q.scaled(CycloScalar(-1))).is_zero());
  }

  // randomized: sums of random monomials with rational and zeta coefficients
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    NcPoly p = NcPoly::zero(a);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      Word w;
      int len = static_cast<int>(rng() % 5);
      for (int i = 0; i < len; ++i)
        w.letters.push_back(static_cast<uint32_t>(rng() % 2));
      long num = static_cast<long>(rng() % 9) - 4;
      long den = 1 + static_cast<long>(rng() % 4);
      CycloScalar c = CycloScalar(Rational(num, den));
      if (rng() % 3 == 0)
        c = c * CycloScalar::root_of_unity(4, static_cast<long>(rng() % 4));
      p.add_term(w, c);
    }
    NcPoly q = parse_poly(p.str(), a);
    CHECK((p + q.scaled(CycloScalar(-1))).is_zero());
  }
}

TEST_CASE("job files validate their shape") {
  JobSpec job = parse_job(kSwapJob);
  CHECK(job.cyclotomic_order == 1);
  CHECK(job.use_catalog);
  CHECK(job.catalog.name == "skew");
  CHECK(job.degree_bound == 8);
  CHECK(job.guard == 4);
  CHECK(job.analyses.size() == 7);
  CHECK(job.analyses.front() == "hilbert");
  CHECK(job.analyses.back() == "auslander");

  // defaults
  JobSpec d = parse_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                            "analyses": ["hilbert"]})json");
  CHECK(d.degree_bound == 12);
  CHECK(d.guard == 5);
  CHECK(d.cyclotomic_order == 1);

  check_bad_job("{", "job file");
  check_bad_job(R"json({"analyses": ["hilbert"]})json", "missing 'algebra'");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2}})json",
                "missing 'analyses'");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": []})json",
                "nonempty");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["molien"]})json",
                "unknown analysis");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["hilbert", "hilbert"]})json",
                "duplicate analysis");
  check_bad_job(R"json({"algebra": {"catalog": "spooky"}, "analyses": ["hilbert"]})json",
                "unknown family");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["hilbert"], "extra": 1})json",
                "unknown key 'extra'");
  check_bad_job(R"json({"schema": 2, "algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["hilbert"]})json",
                "schema 1");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["smallness"]})json",
                "needs an action");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "action": {"kind": "group",
                               "matrices": [[["1","0"],["0","1"]]]},
                    "analyses": ["twist_check"]})json",
                "needs a twist block");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "action": {"kind": "dual_group", "family": "cyclic",
                               "n": 2, "grading": [0, 1]},
                    "analyses": ["smallness"]})json",
                "group action");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "action": {"kind": "group", "matrices": [[["1","0"]]]},
                    "analyses": ["smallness"]})json",
                "2x2");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "action": {"kind": "dual_group", "family": "cyclic",
                               "n": 2, "grading": [0, 5]},
                    "analyses": ["pertinency"]})json",
                "grading");
  check_bad_job(R"json({"algebra": {"generators": ["x", "zeta"]},
                    "analyses": ["hilbert"]})json",
                "generator name");
  check_bad_job(R"json({"algebra": {"generators": ["x", "x"]},
                    "analyses": ["hilbert"]})json",
                "duplicate generator");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["hilbert"], "degree_bound": 1})json",
                "degree_bound");
  check_bad_job(R"json({"algebra": {"catalog": "polynomial", "n": 2},
                    "analyses": ["hilbert"], "degree_bound": 6, "guard": 6})json",
                "guard");
}

TEST_CASE("run errors name the failing stage") {
  JobSpec bad_rel = parse_job(R"json({
    "algebra": {"generators": ["x", "y"], "relations": ["x*y - y*w"]},
    "analyses": ["hilbert"]})json");
  try {
    run(bad_rel);
    FAIL("no error");
  } catch (const Error& e) {
    std::string w = e.what();
    CHECK(w.find("stage 'algebra'") != std::string::npos);
    CHECK(w.find("unknown identifier 'w'") != std::string::npos);
    CHECK(w.find("position") != std::string::npos);
  }

  JobSpec bad_field = parse_job(R"json({
    "field": {"cyclotomic_order": 2},
    "algebra": {"generators": ["x", "y"], "relations": ["x*y - zeta(4)*y*x"]},
    "analyses": ["hilbert"]})json");
  try {
    run(bad_field);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stage 'algebra'") != std::string::npos);
    CHECK(std::string(e.what()).find("zeta_2") != std::string::npos);
  }

  JobSpec bad_action = parse_job(R"json({
    "algebra": {"catalog": "skew", "q": [["1", "-1"], ["1", "1"]]},
    "action": {"kind": "group", "matrices": [[["1", "1"], ["0", "1"]]]},
    "analyses": ["smallness"]})json");
  try {
    run(bad_action);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAutomorphism);
    CHECK(std::string(e.what()).find("stage 'action'") != std::string::npos);
  }
}

TEST_CASE("the swap job reproduces the known verdict set") {
  Report rep = run(parse_job(kSwapJob));
  const auto& an = rep.doc.at("analyses");
  CHECK(an.at("smallness").at("small") == false);
  CHECK(an.at("smallness").at("witnesses").size() == 1);
  CHECK(an.at("rpf").at("verdict") == "CSMALL");
  CHECK(an.at("rpf").at("group_rpf") == 2);
  CHECK(an.at("pertinency").at("pty") == 2);
  CHECK(an.at("pertinency").at("certainty") == "EXACT");
  CHECK(an.at("hsmall").at("hsmall") == true);
  CHECK(an.at("hsmall").at("j_exact") == 2);
  CHECK(an.at("auslander").at("status") == "CONSISTENT_UP_TO_N");
  CHECK(rep.doc.at("cross_check").at("consistent") == true);
  CHECK(rep.doc.at("cross_check").at("signals").at("pertinency_ge_2") == true);
  CHECK(rep.doc.at("cross_check").at("signals").at("hsmall") == true);
  CHECK(rep.undecided == false);
  CHECK(rep.doc.at("undecided") == false);

  // the non-identity trace is 1, 0, -1, 0, ...
  const auto& tr = an.at("trace").at("elements").at(1).at("coeffs");
  REQUIRE(tr.size() == 9);
  for (size_t i = 0; i < tr.size(); ++i) {
    const char* want = i % 4 == 0 ? "1" : (i % 4 == 2 ? "-1" : "0");
    CHECK(tr.at(i) == want);
  }
}

TEST_CASE("reports are deterministic and emit round-trips") {
  JobSpec job = parse_job(kSwapJob);
  Report a = run(job);
  Report b = run(job);
  std::string ja = emit(a, "json");
  std::string jb = emit(b, "json");
  CHECK(ja == jb);
  CHECK(emit(a, "text") == emit(b, "text"));

  auto parsed = nlohmann::ordered_json::parse(ja);
  CHECK(parsed == a.doc);
  CHECK(parsed.at("schema") == 1);
  CHECK(parsed.at("environment").at("degree_bound") == 8);
  CHECK(parsed.at("environment").at("guard") == 4);
  CHECK(parsed.at("environment").at("complete_to") == 8);

  std::string tx = emit(a, "text");
  CHECK(tx.find("complete_to") != std::string::npos);
  CHECK(tx.find("certainty EXACT") != std::string::npos);
  CHECK(tx.find("CONSISTENT_UP_TO_N") != std::string::npos);

  CHECK_THROWS_AS(emit(a, "yaml"), Error);
}

TEST_CASE("dual-group jobs run the pertinency pipeline") {
  Report rep = run(parse_job(R"json({
    "algebra": {"catalog": "polynomial", "n": 1},
    "action": {"kind": "dual_group", "family": "cyclic", "n": 2, "grading": [1]},
    "analyses": ["hilbert", "pertinency"],
    "degree_bound": 10, "guard": 4})json"));
  const auto& p = rep.doc.at("analyses").at("pertinency");
  CHECK(p.at("pty") == 1);
  CHECK(p.at("certainty") == "EXACT");
  std::vector<unsigned long long> qd = p.at("quotient_dims");
  REQUIRE(qd.size() == 11);
  CHECK(qd[0] == 1);
  for (size_t i = 1; i < qd.size(); ++i) CHECK(qd[i] == 0);
  CHECK(rep.undecided == false);
}

TEST_CASE("trivial-group jobs report degenerate everywhere") {
  Report rep = run(parse_job(R"json({
    "algebra": {"catalog": "skew", "q": [["1", "-1"], ["1", "1"]]},
    "action": {"kind": "group", "matrices": [[["1", "0"], ["0", "1"]]]},
    "analyses": ["rpf", "pertinency", "hsmall"],
    "degree_bound": 8, "guard": 4})json"));
  const auto& an = rep.doc.at("analyses");
  CHECK(an.at("rpf").at("degenerate") == true);
  CHECK(an.at("pertinency").at("degenerate") == true);
  CHECK(an.at("hsmall").at("degenerate") == true);
  CHECK(an.at("hsmall").at("hsmall") == true);
  CHECK(rep.undecided == false);
  // degenerate signals stay out of the cross-check
  const auto& sig = rep.doc.at("cross_check").at("signals");
  CHECK(sig.at("pertinency_ge_2").is_null());
  CHECK(sig.at("hsmall").is_null());
}

TEST_CASE("twist jobs compare the smash quotients across the twist") {
  Report rep = run(parse_job(R"json({
    "field": {"cyclotomic_order": 4},
    "algebra": {"generators": ["x", "y"], "relations": ["x*y - y*x"]},
    "action": {"kind": "group", "matrices": [[["zeta(4)", "0"], ["0", "1"]]]},
    "twist": {"eigen": [["1", "zeta(4)"], ["1", "1"]]},
    "analyses": ["pertinency", "twist_check"],
    "degree_bound": 10, "guard": 5})json"));
  const auto& tc = rep.doc.at("analyses").at("twist_check");
  CHECK(tc.at("compatible") == true);
  CHECK(tc.at("conflict").is_null());
  CHECK(tc.at("dims_match") == true);
  CHECK(tc.at("quotient_dims_base") == tc.at("quotient_dims_twisted"));

  // a non-diagonal group element cannot cross a nontrivial diagonal twist
  Report conf = run(parse_job(R"json({
    "field": {"cyclotomic_order": 4},
    "algebra": {"generators": ["x", "y"], "relations": ["x*y - y*x"]},
    "action": {"kind": "group", "matrices": [[["0", "1"], ["1", "0"]]]},
    "twist": {"eigen": [["1", "zeta(4)"], ["1", "1"]]},
    "analyses": ["twist_check"],
    "degree_bound": 6, "guard": 2})json"));
  const auto& c = conf.doc.at("analyses").at("twist_check");
  CHECK(c.at("compatible") == false);
  CHECK(!c.at("conflict").is_null());
}

TEST_CASE("down-up jobs run from catalog parameters") {
  Report rep = run(parse_job(R"json({
    "algebra": {"catalog": "down_up", "alpha": "2", "beta": "-1"},
    "analyses": ["hilbert"],
    "degree_bound": 6, "guard": 2})json"));
  std::vector<unsigned long long> dims = rep.doc.at("algebra").at("dims");
  CHECK(dims == std::vector<unsigned long long>{1, 2, 4, 6, 9, 12, 16});

  // parameters whose character roots need a larger field are rejected
  try {
    run(parse_job(R"json({
      "algebra": {"catalog": "down_up", "alpha": "0", "beta": "-1"},
      "analyses": ["hilbert"], "degree_bound": 4, "guard": 2})json"));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cyclotomic_order") != std::string::npos);
  }
}

TEST_CASE("undecided analyses flag the report") {
  // at this tiny bound the quotient growth stays heuristic
  Report rep = run(parse_job(R"json({
    "field": {"cyclotomic_order": 4},
    "algebra": {"generators": ["x", "y"], "relations": ["x*y - y*x"]},
    "action": {"kind": "group", "matrices": [[["zeta(4)", "0"], ["0", "1"]]]},
    "analyses": ["pertinency"],
    "degree_bound": 8, "guard": 4})json"));
  CHECK(rep.doc.at("analyses").at("pertinency").at("certainty") == "HEURISTIC");
  CHECK(rep.undecided == true);
  CHECK(rep.doc.at("undecided") == true);
}
