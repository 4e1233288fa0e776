#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "json.hpp"
#include "leibniz/leibniz.h"

namespace {

using Json = nlohmann::json;

std::string take(char* s) {
  std::string out = s ? s : "";
  lz_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("generate, serialize, parse") {
  lz_algebra* a = nullptr;
  REQUIRE(lz_algebra_generate("L1", 3, 0, "2,5", &a) == LZ_OK);
  size_t dim = 0;
  CHECK(lz_algebra_dim(a, &dim) == LZ_OK);
  CHECK(dim == 5);
  char* text = nullptr;
  REQUIRE(lz_algebra_to_json(a, &text) == LZ_OK);
  std::string json = take(text);
  CHECK(Json::parse(json)["products"].size() == 4);

  lz_algebra* b = nullptr;
  REQUIRE(lz_algebra_from_json(json.c_str(), &b) == LZ_OK);
  int found = 0;
  char* out = nullptr;
  REQUIRE(lz_isomorphism_search(a, b, LZ_BUDGET_PERMUTATION_SCALING, &found, &out) == LZ_OK);
  take(out);
  CHECK(found == 1);
  lz_algebra_free(a);
  lz_algebra_free(b);
}

TEST_CASE("classify through the C API") {
  lz_algebra* a = nullptr;
  REQUIRE(lz_algebra_generate("M3", 4, 2, "1,0,-4", &a) == LZ_OK);
  char* out = nullptr;
  REQUIRE(lz_classify(a, nullptr, &out) == LZ_OK);
  Json j = Json::parse(take(out));
  CHECK(j["witness_verified"] == true);
  CHECK(j["spec"]["family"] == "M3");
  lz_algebra_free(a);
}

TEST_CASE("error codes and messages") {
  lz_algebra* a = nullptr;
  CHECK(lz_algebra_from_json("{not json", &a) == LZ_ERR_SCHEMA);
  CHECK(std::strlen(lz_last_error()) > 0);
  CHECK(a == nullptr);
  CHECK(lz_algebra_from_json(R"({"schema_version":"1","dim":2,"basis":["a","b"],"products":[
      {"left":0,"right":1,"value":[{"idx":0,"num":"1","den":"1"}]},
      {"left":0,"right":1,"value":[]}]})",
                             &a) == LZ_ERR_SCHEMA);
  CHECK(lz_algebra_from_json(R"({"schema_version":"1","dim":2,"basis":["a","b"],"products":[
      {"left":0,"right":5,"value":[]}]})",
                             &a) == LZ_ERR_SCHEMA);
  CHECK(lz_algebra_from_json(R"({"schema_version":"1","dim":2,"basis":["a","b"],"products":[
      {"left":0,"right":1,"value":[{"idx":0,"num":"1","den":"0"}]}]})",
                             &a) == LZ_ERR_SCHEMA);
  CHECK(lz_algebra_generate("L99", 3, 0, "", &a) == LZ_ERR_SCHEMA);
  CHECK(lz_algebra_generate("L1", 3, 0, "1", &a) == LZ_ERR_DIMENSION);

  REQUIRE(lz_algebra_from_json(R"({"schema_version":"1","dim":3,"basis":["a","b","c"],"products":[]})", &a) == LZ_OK);
  char* out = nullptr;
  CHECK(lz_classify(a, nullptr, &out) == LZ_ERR_NOT_IN_CLASS);
  CHECK(std::string(lz_status_name(LZ_ERR_NOT_IN_CLASS)) == "not_in_class");
  int passed = 0;
  REQUIRE(lz_verify(a, nullptr, &passed, &out) == LZ_OK);
  Json j = Json::parse(take(out));
  CHECK(passed == 1);
  CHECK(j["class"]["text"] == "nilpotent(2)");
  lz_algebra_free(a);
  CHECK(lz_classify(nullptr, nullptr, &out) == LZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fuzz and listings") {
  char* out = nullptr;
  int all = 0;
  REQUIRE(lz_fuzz("M3", 4, 2, 10, 7, &all, &out) == LZ_OK);
  Json j = Json::parse(take(out));
  CHECK(all == 1);
  CHECK(j["passed"] == 10);
  REQUIRE(lz_list_families(3, &out) == LZ_OK);
  CHECK(!Json::parse(take(out))["branches"].empty());
}

TEST_CASE("sha256") {
  char* out = nullptr;
  REQUIRE(lz_sha256_hex("abc", 3, &out) == LZ_OK);
  CHECK(take(out) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
