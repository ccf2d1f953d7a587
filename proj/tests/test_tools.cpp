#include <atomic>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "output.hpp"
#include "parallel.hpp"
#include "tables.hpp"

using namespace erlang_spectral;

TEST_CASE("last digit unit") {
  CHECK(tables::last_digit_unit("0.95576") == doctest::Approx(1e-5));
  CHECK(tables::last_digit_unit("1.1778") == doctest::Approx(1e-4));
  CHECK(tables::last_digit_unit("2.64792e-4") == doctest::Approx(1e-9));
  CHECK(tables::last_digit_unit("4.25017e-11") == doctest::Approx(1e-16));
  CHECK(tables::parse_published("4.25017e-11") == 4.25017e-11);
}

TEST_CASE("table fixtures are complete") {
  CHECK(tables::published_table(2).rows.size() == 7);
  for (int id : {3, 4, 5, 6}) CHECK(tables::published_table(id).rows.size() == 9);
  CHECK(tables::published_table(5).rows.front().cells.size() == 6);
  CHECK_THROWS(tables::published_table(7));
}

TEST_CASE("beta = 2 table reproduces") {
  for (const auto& c : tables::reproduce_table(3)) {
    INFO(c.column << " eta=" << c.eta);
    CHECK(c.pass);
  }
}

TEST_CASE("csv output: header, 12 digits, lossless re-read") {
  std::ostringstream os;
  cli::Writer w(os, cli::Format::Csv);
  w.write({{"a", 0.1234567890123456}, {"b", 3LL}, {"c", true}, {"d", std::string("x,y")}});
  w.write({{"a", 1e-300}, {"b", 4LL}, {"c", false}, {"d", std::string("z")}});
  std::istringstream is(os.str());
  std::string header, row1;
  std::getline(is, header);
  std::getline(is, row1);
  CHECK(header == "a,b,c,d");
  CHECK(row1 == "0.123456789012,3,true,\"x,y\"");
  const double back = std::strtod("0.123456789012", nullptr);
  CHECK(cli::format_double(back, 12) == "0.123456789012");
}

TEST_CASE("json output: one object per line, 17 digits, round trip") {
  std::ostringstream os;
  cli::Writer w(os, cli::Format::Json);
  const double x = 0.1 + 0.2;
  w.write({{"check", std::string("q\"t")}, {"value", x}, {"pass", true}, {"bad", NAN}});
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["value"].get<double>() == x);
  CHECK(j["check"] == "q\"t");
  CHECK(j["pass"] == true);
  CHECK(j["bad"].is_null());
  CHECK(os.str().back() == '\n');
}

TEST_CASE("parallel_for is order independent and honours the cap") {
  setenv("ERLANG_SPECTRAL_THREADS", "1", 1);
  CHECK(cli::worker_count() == 1);
  unsetenv("ERLANG_SPECTRAL_THREADS");
  std::vector<int> slots(100);
  std::atomic<int> calls{0};
  cli::parallel_for(slots.size(), [&](std::size_t i) {
    slots[i] = static_cast<int>(i * i);
    ++calls;
  });
  CHECK(calls == 100);
  for (int i = 0; i < 100; ++i) CHECK(slots[i] == i * i);
  CHECK_THROWS_AS(cli::parallel_for(4, [](std::size_t i) {
                    if (i == 2) throw std::runtime_error("x");
                  }),
                  std::runtime_error);
}
