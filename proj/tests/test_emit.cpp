#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "pspectral/emit.hpp"
#include "pspectral/error.hpp"

using namespace pspectral;

namespace {
std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }
}  // namespace

TEST_CASE("format parsing") {
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("doubles round trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("declared headers") {
  const auto r = profile(ModelProblem{2, 3, 0, 1, ModelFamily::FlatRadial, 0});
  const auto j = nlohmann::json::parse(emit(r, Format::Json));
  CHECK(j.size() == 4);
  CHECK(j.contains("b"));
  CHECK(j.contains("delta"));
  CHECK(j.contains("m"));
  CHECK(j["status"] == "finite");
  CHECK(first_line(emit(r, Format::Csv)) == "b,delta,m,status");

  const std::vector<SharpGapResult> rows{sharp_gap_report(2, 3, -1, 2)};
  CHECK(first_line(emit(rows, Format::Csv)) == "p,n,k,d,lambda_bar");

  const HarmonicPolynomial u(real_power(2, 2));
  const auto curve = frequency_curve(u, {0, 0}, {0.5, 1.0});
  CHECK(first_line(emit(curve, Format::Csv)) == "r,H,D,N,Hbar,Nbar");
}

TEST_CASE("infinite profiles") {
  const auto r = profile(ModelProblem{1.5, 3, -1, 0.3, ModelFamily::HypSinh, 0});
  const auto j = nlohmann::json::parse(emit(r, Format::Json));
  CHECK(j["b"].is_null());
  CHECK(j["status"] == "infinite");
}
