#include <gtest/gtest.h>

#include "tropmat/json_io.hpp"
#include "test_support.hpp"

namespace tropmat::io {
namespace {

using tropmat::testing::Mat;

TEST(Labels, RejectsBadNames) {
  EXPECT_THROW(Labels({"a", ""}), InputError);
  EXPECT_THROW(Labels({"a,b"}), InputError);
  EXPECT_THROW(Labels({"a", "a"}), InputError);
  EXPECT_THROW(Labels({"*", "a"}), InputError);
  EXPECT_NO_THROW(Labels({"a", "*"}));
  EXPECT_THROW(Labels::numbered(3).with_star().with_star(), InputError);
  EXPECT_EQ(Labels::numbered(3).with_star().without_star().names(), Labels::numbered(3).names());
}

TEST(Matrix, RoundTrip) {
  const TropMatrix a = Mat({{"1", "-1/2", "inf"}, {"0", "inf", "3"}});
  const Json j = matrix_json(a);
  EXPECT_EQ(dump(j), R"({"d":2,"n":3,"rows":[["1","-1/2","inf"],["0","inf","3"]]})");
  EXPECT_EQ(read_matrix(parse(dump(j), "t")).value, a);
}

TEST(Matrix, NumbersAndStrings) {
  const auto r = read_matrix(parse(R"({"rows":[[1,"inf","0.5"],[-2,"1/3",0]]})", "t"));
  EXPECT_EQ(r.value, Mat({{"1", "inf", "1/2"}, {"-2", "1/3", "0"}}));
  // Binary floats are not exact; decimals must be strings.
  EXPECT_THROW(read_matrix(parse(R"({"rows":[[0.5]]})", "t")), InputError);
}

TEST(Matrix, StarLabelMovesLast) {
  const auto r = read_matrix(parse(R"({"labels":["*","a","b"],"rows":[["5","1","2"]]})", "t"));
  EXPECT_EQ(r.labels.names(), (std::vector<std::string>{"a", "b", "*"}));
  EXPECT_EQ(r.value, Mat({{"1", "2", "5"}}));
}

TEST(Matrix, MappingGivesOrder) {
  const auto r = read_matrix(
      parse(R"({"mapping":[{"label":"q","index":2},{"label":"p","index":1}],"rows":[["1","2"]]})", "t"));
  EXPECT_EQ(r.labels.names(), (std::vector<std::string>{"p", "q"}));
}

TEST(Matrix, Errors) {
  const char* bad[] = {
      R"({"rows":[]})",
      R"({"rows":[["0","1"],["0"]]})",
      R"({"d":3,"rows":[["0"]]})",
      R"({"n":2,"rows":[["0"]]})",
      R"({"rows":[["0","in f"]]})",
      R"({"labels":["a"],"rows":[["0","1"]]})",
      R"({"mapping":[{"label":"a","index":1},{"label":"b","index":1}],"rows":[["0","1"]]})",
  };
  for (const char* text : bad) EXPECT_THROW(read_matrix(parse(text, "t")), InputError) << text;
  EXPECT_THROW(parse("{\"rows\": [", "t"), InputError);
}

TEST(Function, RoundTripAndStarInference) {
  const auto r = read_function(parse(R"({"n":3,"d":2,"values":{"1,2":"0","1,*":"1","2,*":"inf"}})", "t"));
  EXPECT_TRUE(r.labels.has_star());
  EXPECT_EQ(r.value[singleton(0) | singleton(2)], Trop(1));
  EXPECT_FALSE(r.value[singleton(1) | singleton(2)].is_finite());
  const Json j = function_json(r.value, r.labels);
  EXPECT_EQ(dump(j), R"({"n":3,"d":2,"values":{"1,2":"0","1,*":"1","2,*":"inf"}})");
  EXPECT_EQ(read_function(j).value, r.value);
}

TEST(Function, Errors) {
  EXPECT_THROW(read_function(parse(R"({"n":3,"d":2,"values":{"1":"0"}})", "t")), InputError);
  EXPECT_THROW(read_function(parse(R"({"n":3,"d":2,"values":{"1,4":"0"}})", "t")), InputError);
  EXPECT_THROW(read_function(parse(R"({"n":3,"d":2,"values":{"1,1":"0"}})", "t")), InputError);
  EXPECT_THROW(read_function(parse(R"({"n":3,"d":2,"values":{"1,2":"0","2,1":"1"}})", "t")), InputError);
  EXPECT_THROW(read_function(parse(R"({"n":2,"d":3,"values":{}})", "t")), InputError);
  // 0 on three pairs of a 4-set and 1 on the rest breaks the three-term relation.
  EXPECT_THROW(read_valuated(parse(
                   R"({"n":4,"d":2,"values":{"1,2":"0","3,4":"0","1,3":"1","2,4":"1","1,4":"2","2,3":"2"}})", "t")),
               InputError);
}

TEST(Matroid, RoundTrip) {
  const auto r = read_matroid(parse(R"({"n":3,"d":2,"bases":[[1,2],[1,3]]})", "t"));
  EXPECT_EQ(r.value.bases().size(), 2u);
  EXPECT_EQ(read_matroid(matroid_json(r.value, r.labels)).value, r.value);
  EXPECT_THROW(read_matroid(parse(R"({"n":4,"bases":[[1,2],[3,4]]})", "t")), InputError);
  EXPECT_THROW(read_matroid(parse(R"({"n":3,"d":1,"bases":[[1,2]]})", "t")), InputError);
}

TEST(SetSystem, InfersGround) {
  const auto r = read_set_system(parse(R"({"sets":[[1,2],[4]]})", "t"));
  EXPECT_EQ(r.labels.size(), 4);
  EXPECT_THROW(read_set_system(parse(R"({"sets":[[0]]})", "t")), InputError);
}

TEST(Column, BothForms) {
  EXPECT_EQ(read_column(parse(R"({"x":["0","inf"]})", "t"), 2), (ExtensionColumn{Trop(0), Trop::inf()}));
  EXPECT_EQ(read_column(parse(R"([1])", "t"), 1), (ExtensionColumn{Trop(1)}));
  EXPECT_THROW(read_column(parse(R"([1])", "t"), 2), InputError);
}

TEST(Corpus, Fields) {
  const CorpusSpec s = read_corpus(parse(R"({"n":5,"d":3,"seed":9,"inf_probability":"1/3","value_grid":[0,"1/2"]})", "t"));
  EXPECT_EQ(s.n, 5);
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.inf_probability, Rational(1, 3));
  EXPECT_EQ(s.value_grid.size(), 2u);
  EXPECT_EQ(read_corpus(corpus_json(s)).value_grid, s.value_grid);
  EXPECT_THROW(read_corpus(parse(R"({"n":2,"d":3})", "t")), InputError);
  EXPECT_THROW(read_corpus(parse(R"({"inf_probability":1})", "t")), InputError);
  EXPECT_THROW(read_corpus(parse(R"({"value_grid":[]})", "t")), InputError);
  EXPECT_THROW(read_corpus(parse(R"({"seed":-1})", "t")), InputError);
}

TEST(Errors, MessagesNameTheLocation) {
  try {
    read_matrix(parse(R"({"rows":[["0","x"]]})", "t"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("rows[0][1]"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace tropmat::io
