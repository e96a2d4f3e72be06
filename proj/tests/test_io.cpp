#include <doctest.h>

#include <sstream>

#include "frtv/io.hpp"
#include "frtv/propcheck.hpp"

using namespace frtv;

TEST_CASE("csv signal round trip") {
  const Signal1D w = Signal1D::sample(8, [](double x) { return x * x - 0.1; });
  std::stringstream ss;
  write_signal_csv(ss, w);
  const Signal1D back = read_signal_csv(ss);
  CHECK(back.values() == w.values());
  std::istringstream plain("0\n1\n2\n\n3\n4\n");
  CHECK(read_signal_csv(plain).n() == 4);
  std::istringstream bad_header("# n=5\n0\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_signal_csv(bad_header), IoError);
  std::istringstream junk("0\n1\nx\n3\n4\n");
  CHECK_THROWS_AS(read_signal_csv(junk), IoError);
}

TEST_CASE("pgm ascii and binary") {
  std::istringstream p2("P2\n# comment\n3 3\n10\n0 5 10\n1 2 3\n4 5 6\n");
  const PgmImage a = read_pgm(p2);
  CHECK(a.maxval == 10);
  CHECK(a.format == PgmFormat::ascii);
  CHECK(a.field(2, 0) == 1.0);
  CHECK(a.field(0, 1) == doctest::Approx(0.1));
  std::stringstream out;
  write_pgm(out, a.field, a.maxval, a.format);
  CHECK(out.str() == "P2\n3 3\n10\n0 5 10\n1 2 3\n4 5 6\n");

  std::string raw = "P5 3 3 255\n";
  for (int i = 0; i < 9; ++i) raw.push_back(static_cast<char>(i * 30));
  std::istringstream p5(raw);
  const PgmImage b = read_pgm(p5);
  CHECK(b.format == PgmFormat::binary);
  std::stringstream out5;
  write_pgm(out5, b.field, b.maxval, b.format);
  std::istringstream again(out5.str());
  CHECK(read_pgm(again).field.values()[4] == b.field.values()[4]);
}

TEST_CASE("pgm round trip is value identical after normalization") {
  GridField f = GridField::sample(2, 6, [](double a, double b) { return a * b * 1.3 - 0.1; });
  for (int maxval : {255, 1000}) {
    for (PgmFormat fmt : {PgmFormat::ascii, PgmFormat::binary}) {
      std::stringstream s1;
      write_pgm(s1, f, maxval, fmt);
      const PgmImage first = read_pgm(s1);
      std::stringstream s2;
      write_pgm(s2, first.field, maxval, fmt);
      CHECK(s1.str() == s2.str());
      const PgmImage second = read_pgm(s2);
      CHECK(std::vector<double>(first.field.values().begin(), first.field.values().end()) ==
            std::vector<double>(second.field.values().begin(), second.field.values().end()));
    }
  }
}

TEST_CASE("pgm rejects bad input") {
  std::istringstream rect("P2 3 4 255\n" + std::string(12 * 2, ' '));
  CHECK_THROWS_AS(read_pgm(rect), IoError);
  std::istringstream magic("P6 3 3 255\n");
  CHECK_THROWS_AS(read_pgm(magic), IoError);
  std::istringstream short5("P5 3 3 255\nab");
  CHECK_THROWS_AS(read_pgm(short5), IoError);
  std::istringstream over("P2 3 3 5\n0 0 0 0 9 0 0 0 0\n");
  CHECK_THROWS_AS(read_pgm(over), IoError);
}

TEST_CASE("json records") {
  const TVResult r = tv_r(GridField::sample(1, 16, [](double a, double) { return a; }), Order(0.5),
                          EllP::infinity());
  const auto j = to_json(r);
  CHECK(j["p"] == "inf");
  CHECK(j["order"] == 0.5);
  CHECK(j["per_term"].size() == 1);
  PropertyReport rep{"demo", "note", {make_case("c", 1.0, 2.0)}, {8}, 7};
  const auto k = to_json(rep);
  CHECK(k["pass"] == true);
  CHECK(k["cases"][0]["direction"] == "at_most");
}
