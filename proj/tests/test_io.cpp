#include <doctest.h>

#include <sstream>

#include "glab/constants.hpp"
#include "glab/io.hpp"

using glab::DDReal;
namespace io = glab::io;

TEST_CASE("num: 20 significant digits for pairs, shortest form for doubles") {
  CHECK(io::num(glab::constants().gamma) == "0.57721566490153286061");
  CHECK(io::num(0.1) == "0.1");
  CHECK(io::num(std::optional<DDReal>{}).empty());
  CHECK(io::jnum(std::optional<DDReal>{}).is_null());
  const DDReal v = glab::constants().pi;
  CHECK(io::num(io::to_dd(io::jnum(v))) == io::num(v));
}

TEST_CASE("csv_line: comma-joined, newline-terminated") {
  std::ostringstream out;
  io::csv_line(out, io::kRemainderHeader);
  CHECK(out.str() == "k,p,theta,S,R,Q,scaledQ\n");
}

TEST_CASE("headers and rows have the same width") {
  glab::mertens::RemainderFold f;
  for (const std::uint64_t p : {2, 3, 5}) {
    const auto s = f.push(p);
    CHECK(io::remainder_row(s).size() == io::kRemainderHeader.size());
  }
  // p = 2 carries no Q: empty fields in CSV, null in JSON.
  glab::mertens::RemainderFold g;
  const auto s2 = g.push(2);
  CHECK(io::remainder_row(s2)[5].empty());
  CHECK(io::to_json(s2)["Q"].is_null());
  CHECK(io::kCertificateHeader.size() == 14);
  const auto t = glab::mertens::prime_zeta_tail(10.0, 2.0);
  CHECK(io::tail_row(t, DDReal(0.03)).size() == io::kTailHeader.size());
  CHECK(io::b1_row(glab::mertens::meissel_mertens_B1(1e-9)).size() == io::kB1Header.size());
}

TEST_CASE("violator report JSON round trip") {
  glab::gronwall::ViolatorReport r;
  r.limit = 10000;
  r.violators = {3, 4, 5040};
  r.max_violator = 5040;
  r.near_misses = {{10080, -1e-3, -1}};
  r.escalations = 7;
  const auto j = io::to_json(r);
  const auto back = io::violator_report_from_json(j);
  CHECK(back.limit == r.limit);
  CHECK(back.violators == r.violators);
  CHECK(back.max_violator == r.max_violator);
  CHECK(back.near_misses.size() == 1);
  CHECK(back.near_misses[0].N == 10080);
  CHECK(back.near_misses[0].margin == -1e-3);
  CHECK(back.escalations == 7);
  CHECK(io::to_json(back) == j);
}

TEST_CASE("factored integer JSON round trip") {
  const glab::extremal::FactoredInteger n({{3, 2}, {1, 5}}, glab::parse_ddreal("12.5"));
  const auto j = io::to_json(n);
  CHECK(j["exponents"] == io::json::parse("[[3,2],[1,5]]"));
  const auto back = io::factored_from_json(j);
  CHECK(back.runs() == n.runs());
  CHECK(back == n);
}
