#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "eds/tables.hpp"

using namespace eds;

TEST_CASE("row counts and the transcribed entries") {
  auto t1 = load_rows("1");
  auto t2 = load_rows("2");
  auto t3 = load_rows("3");
  auto ex = load_rows("ex");
  CHECK(t1.size() == 17);
  CHECK(t2.size() == 19);  // one line stored once with both multipliers
  CHECK(t3.size() == 15);
  CHECK(ex.size() == 4);
  CHECK(load_rows("all").size() == 17 + 19 + 15 + 4);

  // first row of table 1
  CHECK(t1[0].ms == std::vector<int>{2});
  CHECK(t1[0].curve == WeierstrassCurve(1, -1, 1, 4, 6));
  CHECK(t1[0].x == Rational(0));
  CHECK(t1[0].y == Rational(2));
  CHECK(t1[0].torsion == 4);
  CHECK(t1[0].magnification == 2);

  // the doubly-magnified row carries both multipliers
  bool found_double = false;
  for (const auto& r : t2)
    if (r.x == Rational(-5) && r.curve == WeierstrassCurve(1, 0, 1, -36, -70))
      found_double = r.ms == std::vector<int>{2, 3};
  CHECK(found_double);

  // third row of table 3
  CHECK(t3[2].curve == WeierstrassCurve(0, -1, 0, 8, -16));
  CHECK(t3[2].x == Rational(4));
  CHECK(t3[2].y == Rational(8));
  CHECK(t3[2].torsion == 1);

  // worked-example facts
  CHECK(ex[1].curve == WeierstrassCurve(0, 0, 0, 0, 15));
  REQUIRE(ex[1].facts.size() == 1);
  CHECK(ex[1].facts[0]["kind"] == "term_digits_prime");
  CHECK(ex[1].facts[0]["n"] == 41);
  CHECK(ex[1].facts[0]["digits"] == 509);
}

TEST_CASE("checksum guards the dataset") {
  // a tampered copy must be rejected
  std::ifstream in(default_tables_path());
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto pos = body.find("\"torsion\": 4");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 12, "\"torsion\": 5");
  std::string tmp = "/tmp/eds_tampered_tables.json";
  std::ofstream(tmp) << body;
  CHECK_THROWS_AS(load_rows("1", tmp), Error);
  CHECK_THROWS_AS(load_rows("1", "/nonexistent/path.json"), Error);
  CHECK_THROWS_AS(load_rows("bogus-selector"), Error);
}

TEST_CASE("verify a fast sample of rows") {
  VerifyConfig cfg;
  cfg.depth = 2;

  // T1 row 2: [0,-1,0,-4,-2] (3,2), torsion 2, magnification 2
  auto t1 = load_rows("1");
  auto outcomes = verify_row(t1[1], cfg);
  int passes = 0;
  for (const auto& o : outcomes) {
    INFO(o.assertion << " " << o.detail);
    CHECK(o.status == VerificationOutcome::Status::Pass);
    ++passes;
  }
  CHECK(passes >= 3);  // point, torsion, magnification

  // a magnification-3 row is undetermined at depth 2, and that is not a fail
  auto deep = verify_row(t1[2], cfg);
  bool has_undetermined = false;
  for (const auto& o : deep) {
    CHECK(o.status != VerificationOutcome::Status::Fail);
    has_undetermined =
        has_undetermined || (o.assertion == "magnification" &&
                             o.status == VerificationOutcome::Status::Undetermined);
  }
  CHECK(has_undetermined);

  // T3 row: torsion + both isogeny-preimage facts
  auto t3 = load_rows("3");
  for (const auto& o : verify_row(t3[0], cfg)) {
    INFO(o.assertion << " " << o.detail);
    CHECK(o.status == VerificationOutcome::Status::Pass);
  }

  // worked example: B_29 has 285 digits and is a probable prime
  auto ex = load_rows("ex");
  for (const auto& o : verify_row(ex[0], cfg)) {
    INFO(o.assertion << " " << o.detail);
    CHECK(o.status == VerificationOutcome::Status::Pass);
  }
}

TEST_CASE("parallel row verification keeps canonical order") {
  VerifyConfig serial;
  serial.depth = 1;
  VerifyConfig parallel = serial;
  parallel.parallelism = 4;
  auto rows = load_rows("3");
  rows.erase(rows.begin() + 4, rows.end());
  auto a = verify_rows(rows, serial);
  auto b = verify_rows(rows, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].assertion == b[i].assertion);
    CHECK(a[i].row_index == b[i].row_index);
    CHECK((a[i].status == b[i].status));
    CHECK(a[i].detail == b[i].detail);
  }
}
