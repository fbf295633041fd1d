#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"
#include "toricdef/catalog.hpp"
#include "toricdef/io.hpp"

using namespace toricdef;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_fan(text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) return e.what();
    return std::string("other: ") + e.what();
  }
  return "no error";
}

}  // namespace

TEST(FanFile, ParseWithCommentsAndBlankLines) {
  Fan f = parse_fan(
      "# F_1\n"
      "dim 2\n\n"
      "ray e1 1 0   # first\n"
      "ray a1 -1 0\n"
      "ray b1 0 1\n"
      "ray c1 1 -1\n"
      "cone e1 b1\ncone a1 b1\ncone a1 c1\ncone e1 c1\n");
  EXPECT_TRUE(fan_isomorphism(f, hirzebruch(1)).has_value());
  EXPECT_EQ(f.ray(0).name, "e1");
}

TEST(FanFile, CanonicalSerialization) {
  Fan f = hirzebruch(2);
  std::string text = serialize_fan(f);
  EXPECT_EQ(text.substr(0, 6), "dim 2\n");
  EXPECT_NE(text.find("ray c1 2 -1\n"), std::string::npos);
  EXPECT_EQ(serialize_fan(parse_fan(text)), text);
}

TEST(FanFile, RoundTripCorpus) {
  for (const auto& [name, f] : support::corpus()) {
    Fan g = parse_fan(serialize_fan(f));
    EXPECT_EQ(g, f) << name;
  }
}

TEST(FanFile, HugeCoordinates) {
  std::string big = "123456789012345678901234567890";
  Fan f = parse_fan("dim 2\nray x 1 0\nray y " + big + " 1\ncone x y\n");
  EXPECT_EQ(f.generator(1)[0], Integer(big));
  EXPECT_NE(serialize_fan(f).find(big), std::string::npos);
}

TEST(FanFile, ErrorsNameTheLine) {
  EXPECT_NE(parse_error("dim 2\nray x 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("dim 2\nray x 1 0\nray y 0 1\ncone x z\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("dim 2\nray x 1 q\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("ray x 1 0\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("dim 2\nbogus\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("# nothing\n").find("missing 'dim'"), std::string::npos);
  EXPECT_NE(parse_error("dim 2\ndim 2\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("dim 0\n").find("line 1"), std::string::npos);
}

TEST(FanFile, ValidationErrorsPassThrough) {
  try {
    parse_fan("dim 2\nray x 2 0\nray y 0 1\ncone x y\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrimitiveRay);
  }
}

TEST(Relation, ParseAndFormat) {
  auto r = parse_relation("x6+x7 = 2*x1 + x3");
  EXPECT_EQ(r.lhs, (std::vector<std::string>{"x6", "x7"}));
  ASSERT_EQ(r.rhs.size(), 2u);
  EXPECT_EQ(r.rhs[0].first, 2);
  EXPECT_EQ(r.rhs[0].second, "x1");
  EXPECT_EQ(format_relation_spec(r), "x6+x7 = 2*x1 + x3");
  auto z = parse_relation(" x2 + x3 + x5 = 0 ");
  EXPECT_TRUE(z.rhs.empty());
  EXPECT_EQ(format_relation_spec(z), "x2+x3+x5 = 0");
  EXPECT_THROW(parse_relation("x1+x2"), Error);
  EXPECT_THROW(parse_relation("x1+x2 = -1*x3"), Error);
  EXPECT_THROW(parse_relation("x1+ = x3"), Error);
  EXPECT_THROW(parse_relation("x1 = x2 = x3"), Error);
}

TEST(RelationFile, ParseBuildSerialize) {
  const std::string text =
      "# X3_0\n"
      "dim 3\n"
      "gens e1 e2 a1 a2 b1 c1\n"
      "rel e1+a1 = e2\n"
      "rel e2+a2 = 0\n"
      "rel b1+c1 = 2*e1\n"
      "basis e1 e2 b1\n";
  auto doc = parse_relation_document(text);
  EXPECT_EQ(doc.dimension, 3u);
  EXPECT_EQ(doc.relations.size(), 3u);
  EXPECT_EQ(doc.basis, (std::vector<std::string>{"e1", "e2", "b1"}));
  Fan f = fan_from_document(doc);
  EXPECT_EQ(f.generator(f.require_ray("c1")), (LatticeVector{2, 0, -1}));
  auto again = parse_relation_document(serialize_relation_document(doc));
  EXPECT_EQ(serialize_relation_document(again), serialize_relation_document(doc));
}

TEST(RelationFile, GreedyBasisWhenAbsent) {
  auto doc = parse_relation_document("dim 3\ngens e1 e2 a1 a2 b1 c1\nrel e1+a1 = e2\nrel e2+a2 = 0\nrel b1+c1 = 2*e1\n");
  EXPECT_TRUE(doc.basis.empty());
  EXPECT_TRUE(fan_isomorphism(fan_from_document(doc), builtin("X3_0")).has_value());
}

TEST(RelationFile, Errors) {
  auto err = [](const std::string& text) -> std::string {
    try {
      parse_relation_document(text);
    } catch (const Error& e) {
      return e.what();
    }
    return "no error";
  };
  EXPECT_NE(err("dim 2\ngens x y\nrel x+z = 0\n").find("line 3"), std::string::npos);
  EXPECT_NE(err("dim 2\nrel x+y = 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(err("gens x y\n").find("missing 'dim'"), std::string::npos);
  EXPECT_NE(err("dim 2\n").find("missing 'gens'"), std::string::npos);
  EXPECT_NE(err("dim 2\ngens x y\nbasis\n").find("line 3"), std::string::npos);
}

TEST(Files, WriteAndRead) {
  auto path = std::filesystem::temp_directory_path() / "toricdef_io_test.fan";
  write_text_file(path.string(), serialize_fan(builtin("X3_0")));
  EXPECT_EQ(read_fan_file(path.string()), builtin("X3_0"));
  std::filesystem::remove(path);
  EXPECT_THROW(read_fan_file("/nonexistent/dir/file.fan"), Error);
}
