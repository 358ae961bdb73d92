#include <gtest/gtest.h>

#include <sstream>

#include "wcomp/errors.hpp"
#include "wcomp/io.hpp"

using namespace wcomp;
using io::Json;

namespace {

std::string error_of(const Json& j) {
  try {
    io::family_from_json(j);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(FamilyJson, RoundTrip) {
  const Family star = make_star(CompositionSpace(3, 3), StarSpec{{2}});
  const Json j = io::family_to_json(star);
  EXPECT_EQ(j.dump(), R"({"l":3,"members":[[0,0,3],[1,0,2],[2,0,1],[3,0,0]],"n":3})");
  EXPECT_EQ(io::family_from_json(j), star);
}

TEST(FamilyJson, NamesOffendingMember) {
  const std::string wrong_sum = error_of(Json::parse(R"({"n":2,"l":3,"members":[[0,1,1],[1,1,1]]})"));
  EXPECT_NE(wrong_sum.find("member #1"), std::string::npos) << wrong_sum;
  EXPECT_NE(wrong_sum.find("sums to 3"), std::string::npos) << wrong_sum;

  const std::string wrong_length = error_of(Json::parse(R"({"n":2,"l":3,"members":[[2,0]]})"));
  EXPECT_NE(wrong_length.find("member #0"), std::string::npos) << wrong_length;

  EXPECT_NE(error_of(Json::parse(R"({"n":2,"l":3,"members":[[2,0,-0.5]]})")), "");
  EXPECT_NE(error_of(Json::parse(R"({"n":2,"l":3,"members":[[-1,3,0]]})")), "");
  EXPECT_NE(error_of(Json::parse(R"({"n":2,"members":[]})")), "");
  EXPECT_NE(error_of(Json::parse(R"({"n":2,"l":0,"members":[]})")), "");
  EXPECT_NE(error_of(Json::parse(R"([1,2])")), "");
}

TEST(SystemJson, RoundTripAndValidation) {
  const Family a = make_star(CompositionSpace(2, 3), StarSpec{{1}});
  const FamilySystem sys({a, a}, 1);
  const FamilySystem back = io::system_from_json(io::system_to_json(sys));
  EXPECT_EQ(back.t(), 1U);
  EXPECT_EQ(back.families(), sys.families());

  EXPECT_THROW(io::system_from_json(Json::parse(R"({"t":1,"families":[{"n":1,"l":2,"members":[]}]})")), InvalidArgument);
  EXPECT_THROW(io::system_from_json(Json::parse(R"({"t":0,"families":[]})")), InvalidArgument);
  try {
    io::system_from_json(Json::parse(R"({"t":1,"families":[{"n":1,"l":2,"members":[]},{"n":1,"l":2,"members":[[1,1]]}]})"));
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("family #1"), std::string::npos) << e.what();
  }
}

TEST(SearchResultJson, RoundTrip) {
  SearchResult r;
  r.product = BigInt("123456789012345678901234567890");
  r.optimal = true;
  r.nodes = 42;
  const Family f = make_star(CompositionSpace(2, 3), StarSpec{{3}});
  r.witnesses = {f, f};
  r.all_maximizers = std::vector<std::vector<Family>>{{f, f}};
  const Json j = io::search_result_to_json(r);
  EXPECT_EQ(j.at("product"), "123456789012345678901234567890");
  const SearchResult back = io::search_result_from_json(j);
  EXPECT_EQ(back.product, r.product);
  EXPECT_EQ(back.nodes, 42U);
  EXPECT_EQ(back.witnesses, r.witnesses);
  EXPECT_EQ(back.all_maximizers, r.all_maximizers);
  EXPECT_EQ(io::search_result_to_json(back).dump(), j.dump());

  EXPECT_THROW(io::search_result_from_json(Json::parse(R"({"product":12})")), InvalidArgument);
  EXPECT_THROW(io::search_result_from_json(Json::parse(R"({"product":"1x","optimal":true,"nodes":1,"witnesses":[]})")),
               InvalidArgument);
}

TEST(BoundJson, Keys) {
  const Json j = io::bound_report_to_json(bound_report({{5, 3}, {5, 3}}, 1));
  EXPECT_EQ(j.dump(),
            R"({"per_case_thresholds":{"case1_1":"81","case1_2":"81","case3_1":"17","case3_2":"17"},"rhs":"36","sufficient_n0":"81"})");
}

TEST(ScanCsv, Format) {
  ScanRow proven;
  proven.n = 4;
  proven.max_product = 25;
  proven.star_bound = 25;
  proven.equals_star = proven.unique_star = proven.optimal = true;
  proven.stars_observed = {{1}, {2}, {3}};
  ScanRow open = proven;
  open.n = 5;
  open.optimal = false;
  open.stars_observed.clear();
  std::ostringstream out;
  io::write_scan_csv(out, {proven, open});
  EXPECT_EQ(out.str(),
            "n,max_product,star_bound,equals_star,unique_star,T_observed\n"
            "4,25,25,true,true,{1};{2};{3}\n"
            "5,25,25,unknown,unknown,\n");
}

TEST(ScanRowJson, RoundTrip) {
  ScanRow row;
  row.n = 7;
  row.max_product = 64;
  row.star_bound = 64;
  row.equals_star = true;
  row.stars_observed = {{2}};
  row.optimal = true;
  row.nodes = 99;
  const ScanRow back = io::scan_row_from_json(io::scan_row_to_json(row));
  EXPECT_EQ(io::scan_row_to_json(back), io::scan_row_to_json(row));
  EXPECT_THROW(io::scan_row_from_json(Json::parse(R"({"n":1})")), InvalidArgument);
}

TEST(ReadJsonFile, Errors) {
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), InvalidArgument);
}
