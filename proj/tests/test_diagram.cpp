#include <gtest/gtest.h>

#include "chordlab/diagram.hpp"

using namespace chordlab;

TEST(Diagram, ParsesLiteral) {
  const auto d = parse_diagram("backbones=[MCCM,CC] chords=[(0.1-1.0,u),(0.2-1.1,t)]");
  EXPECT_EQ(d.mode(), Orientation::NonOriented);
  EXPECT_EQ(d.backbone_count(), 2);
  EXPECT_EQ(d.chord_count(), 2);
  EXPECT_EQ(d.marked_point_count(), 2);
  EXPECT_EQ(d.site_count(), 6);
  EXPECT_EQ(d.kind_at({0, 0}), SiteKind::MarkedPoint);
  EXPECT_EQ(d.kind_at({1, 1}), SiteKind::ChordEnd);
  EXPECT_TRUE(d.chords()[1].twisted);
}

TEST(Diagram, FormatRoundTrip) {
  for (const char* text : {"backbones=[MCCM,CC] chords=[(0.1-1.0,u),(0.2-1.1,u)]",
                           "backbones=[_] chords=[]",
                           "backbones=[CC,_,M] chords=[(0.0-0.1,t)]"}) {
    const auto d = parse_diagram(text);
    const auto again = parse_diagram(format_diagram(d));
    EXPECT_EQ(again.backbones(), d.backbones());
    EXPECT_EQ(again.chords(), d.chords());
    EXPECT_EQ(again.mode(), d.mode());
  }
}

TEST(Diagram, ExplicitModeToken) {
  const auto d = parse_diagram("backbones=[CC] chords=[(0.0-0.1,u)] mode=nonoriented");
  EXPECT_EQ(d.mode(), Orientation::NonOriented);
  EXPECT_EQ(parse_diagram("backbones=[CC] chords=[(0.0-0.1,u)]").mode(), Orientation::Oriented);
}

TEST(Diagram, RejectsInvalidStructures) {
  // chord on a marked point
  EXPECT_THROW(parse_diagram("backbones=[CM] chords=[(0.0-0.1,u)]"), std::invalid_argument);
  // unmatched chord end
  EXPECT_THROW(parse_diagram("backbones=[CCC] chords=[(0.0-0.1,u)]"), std::invalid_argument);
  // end used twice
  EXPECT_THROW(parse_diagram("backbones=[CCCC] chords=[(0.0-0.1,u),(0.1-0.2,u)]"), std::invalid_argument);
  // self chord
  EXPECT_THROW(parse_diagram("backbones=[CC] chords=[(0.0-0.0,u),(0.1-0.1,u)]"), std::invalid_argument);
  // out of range
  EXPECT_THROW(parse_diagram("backbones=[CC] chords=[(0.0-1.0,u)]"), std::invalid_argument);
  // twist in oriented mode
  EXPECT_THROW(parse_diagram("backbones=[CC] chords=[(0.0-0.1,t)] mode=oriented"), std::invalid_argument);
  // garbage
  EXPECT_THROW(parse_diagram("backbones=[CX] chords=[]"), std::invalid_argument);
}

TEST(Diagram, OrientationNames) {
  EXPECT_EQ(parse_orientation("oriented"), Orientation::Oriented);
  EXPECT_EQ(parse_orientation("nonoriented"), Orientation::NonOriented);
  EXPECT_EQ(parse_orientation("non-oriented"), Orientation::NonOriented);
  EXPECT_THROW(parse_orientation("sideways"), std::invalid_argument);
  EXPECT_EQ(to_string(Orientation::NonOriented), "nonoriented");
}

TEST(Connectivity, SingleBackboneIsConnected) {
  EXPECT_TRUE(is_connected(parse_diagram("backbones=[CCCC] chords=[(0.0-0.2,u),(0.1-0.3,u)]")));
  EXPECT_TRUE(is_connected(parse_diagram("backbones=[MM] chords=[]")));
}

TEST(Connectivity, TwoBackbonesWithoutChordsAreNot) {
  EXPECT_FALSE(is_connected(parse_diagram("backbones=[M,_] chords=[]")));
}

TEST(Connectivity, JoiningChordConnects) {
  EXPECT_TRUE(is_connected(parse_diagram("backbones=[CCC,C] chords=[(0.0-0.2,u),(0.1-1.0,u)]")));
  EXPECT_FALSE(is_connected(parse_diagram("backbones=[CC,CC,_] chords=[(0.0-1.0,u),(0.1-1.1,u)]")));
}

TEST(Connectivity, NoBackbones) {
  EXPECT_FALSE(is_connected(PartialChordDiagram({}, {}, Orientation::Oriented)));
}
