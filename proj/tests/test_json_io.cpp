#include <gtest/gtest.h>

#include "chordlab/json_io.hpp"

using namespace chordlab;

TEST(CensusJson, EntrySchema) {
  CensusBundle b;
  b.blocks.push_back(census({{4}, 2, Orientation::Oriented, false}));
  const Json doc = census_bundle_to_json(b);
  EXPECT_EQ(doc.at("version"), kFormatVersion);
  EXPECT_EQ(doc.at("kind"), "census");
  const Json& entries = doc.at("blocks").at(0).at("entries");
  // two planar types (lengths 1,1,3 and 1,2,2) and the torus
  ASSERT_EQ(entries.size(), 3u);
  const Json* adjacent = nullptr;
  for (const auto& e : entries) {
    if (e.at("p_length") == Json({{"1", 2}, {"3", 1}})) adjacent = &e;
  }
  ASSERT_NE(adjacent, nullptr);
  EXPECT_EQ(adjacent->at("genus"), 0);
  EXPECT_TRUE(adjacent->at("crosscaps").is_null());
  EXPECT_EQ(adjacent->at("k"), 2);
  EXPECT_EQ(adjacent->at("l"), 0);
  EXPECT_EQ(adjacent->at("b"), Json({{"4", 1}}));
  EXPECT_EQ(adjacent->at("n_point"), Json({{"0", 3}}));
  EXPECT_EQ(adjacent->at("n_lp"), Json::parse(R"([{"tuple":[0],"count":2},{"tuple":[0,0,0],"count":1}])"));
  EXPECT_EQ(adjacent->at("count"), "1");
  EXPECT_EQ(doc.at("blocks").at(0).at("total"), "3");
}

TEST(CensusJson, RoundTrip) {
  for (auto mode : {Orientation::Oriented, Orientation::NonOriented}) {
    CensusBundle b;
    b.mode = mode;
    b.truncation = Truncation{2, 2, 4};
    for (const auto& block : backbone_blocks(2, 4)) b.blocks.push_back(census({block, std::nullopt, mode, false}));
    const CensusBundle back = census_bundle_from_json(Json::parse(census_bundle_to_json(b).dump()));
    EXPECT_EQ(back.mode, mode);
    ASSERT_TRUE(back.truncation);
    EXPECT_EQ(*back.truncation, *b.truncation);
    ASSERT_EQ(back.blocks.size(), b.blocks.size());
    for (std::size_t i = 0; i < b.blocks.size(); ++i) {
      EXPECT_EQ(back.blocks[i].entries, b.blocks[i].entries);
      EXPECT_EQ(back.blocks[i].spec.backbone_lengths, b.blocks[i].spec.backbone_lengths);
    }
  }
}

TEST(CensusJson, SerializationIsStable) {
  CensusBundle b;
  b.blocks.push_back(census({{3, 2}, std::nullopt, Orientation::NonOriented, false}));
  b.mode = Orientation::NonOriented;
  const std::string once = census_bundle_to_json(b).dump();
  const std::string twice = census_bundle_to_json(census_bundle_from_json(Json::parse(once))).dump();
  EXPECT_EQ(once, twice);
}

TEST(CensusJson, RejectsWrongVersion) {
  CensusBundle b;
  Json doc = census_bundle_to_json(b);
  doc["version"] = 99;
  EXPECT_THROW(census_bundle_from_json(doc), std::invalid_argument);
  doc["version"] = kFormatVersion;
  doc["kind"] = "series";
  EXPECT_THROW(census_bundle_from_json(doc), std::invalid_argument);
}

TEST(SeriesJson, RoundTrip) {
  for (auto model : {Model::Point, Model::Length, Model::LengthAndPoint}) {
    for (auto mode : {Orientation::Oriented, Orientation::NonOriented}) {
      Truncation t{2, 2, std::nullopt};
      if (model != Model::Length) t.site_max = 4;
      const GradedSeries z = evolve(assemble_operator(model, mode), initial_condition(model, mode, t));
      const SeriesDocument back = series_from_json(Json::parse(series_to_json({model, mode, z}).dump()));
      EXPECT_EQ(back.model, model);
      EXPECT_EQ(back.mode, mode);
      EXPECT_EQ(back.series, z);
    }
  }
}

TEST(SeriesJson, TermSchema) {
  GradedSeries f(Truncation{1, 1, std::nullopt});
  LaurentCoeff c(-2, Rational(3, 2));
  f.add_term(Monomial{1, {{kUniformS, 1}}, {{VarKey::u({0, 1}, Symmetry::Necklace), 2}}}, c);
  const Json doc = series_to_json({Model::LengthAndPoint, Orientation::Oriented, f});
  const Json& term = doc.at("terms").at(0);
  EXPECT_EQ(term.at("y"), 1);
  EXPECT_EQ(term.at("s"), Json({{"*", 1}}));
  EXPECT_EQ(term.at("vars"), Json::parse(R"([{"u":[0,1],"pow":2}])"));
  EXPECT_EQ(term.at("coeff"), Json({{"-2", "3/2"}}));
}
